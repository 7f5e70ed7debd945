//! Normalized capacities stored as dense tables over the powerset.

use std::sync::Arc;

use rand::Rng;
use thiserror::Error;

use crate::states_acts::{StateSpace, Subset};

/// Slack used by the convexity/concavity checks.
pub const CONVEXITY_EPS: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CapacityError {
    #[error("capacity table has {got} entries, expected {expected} (one per subset)")]
    MissingSubset { expected: usize, got: usize },
    #[error("capacity is not normalized: v({subset}) = {value}, expected {expected}")]
    NotNormalized {
        subset: String,
        value: f64,
        expected: f64,
    },
    #[error(
        "capacity is not monotone: v({smaller}) = {smaller_value} > v({larger}) = {larger_value}"
    )]
    NotMonotone {
        smaller: Subset,
        larger: Subset,
        smaller_value: f64,
        larger_value: f64,
    },
    #[error("capacity value for {subset} is not finite")]
    NonFinite { subset: Subset },
}

/// Normalized monotone set function: `v(∅) = 0`, `v(S) = 1`, `A ⊆ B ⇒ v(A) ≤ v(B)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Capacity {
    space: Arc<StateSpace>,
    table: Vec<f64>,
}

/// Pair of events witnessing a failed convexity or concavity inequality.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SubsetPair {
    pub a: Subset,
    pub b: Subset,
    /// `v(A∪B) + v(A∩B) - v(A) - v(B)`.
    pub excess: f64,
}

impl Capacity {
    /// Checks every invariant exactly.
    pub fn validate(space: Arc<StateSpace>, table: Vec<f64>) -> Result<Self, CapacityError> {
        Self::validate_with_tolerance(space, table, 0.0)
    }

    /// Like [`Capacity::validate`] but accepts endpoint and monotonicity errors up
    /// to `eps`. Endpoints within tolerance are snapped to exactly 0 and 1.
    pub fn validate_with_tolerance(
        space: Arc<StateSpace>,
        mut table: Vec<f64>,
        eps: f64,
    ) -> Result<Self, CapacityError> {
        let expected = space.subset_count();
        if table.len() != expected {
            return Err(CapacityError::MissingSubset {
                expected,
                got: table.len(),
            });
        }
        if let Some(i) = table.iter().position(|v| !v.is_finite()) {
            return Err(CapacityError::NonFinite {
                subset: Subset(i as u32),
            });
        }
        let full = space.full().index();
        if table[0].abs() > eps {
            return Err(CapacityError::NotNormalized {
                subset: "∅".into(),
                value: table[0],
                expected: 0.0,
            });
        }
        if (table[full] - 1.0).abs() > eps {
            return Err(CapacityError::NotNormalized {
                subset: "S".into(),
                value: table[full],
                expected: 1.0,
            });
        }
        table[0] = 0.0;
        table[full] = 1.0;
        let n = space.len();
        for mask in 0..expected {
            let a = Subset(mask as u32);
            for s in 0..n {
                if a.contains(s) {
                    continue;
                }
                let b = a.insert(s);
                if table[a.index()] > table[b.index()] + eps {
                    return Err(CapacityError::NotMonotone {
                        smaller: a,
                        larger: b,
                        smaller_value: table[a.index()],
                        larger_value: table[b.index()],
                    });
                }
            }
        }
        Ok(Self { space, table })
    }

    /// Builds a capacity from a set function; the result is validated.
    pub fn from_fn(
        space: Arc<StateSpace>,
        f: impl Fn(Subset) -> f64,
    ) -> Result<Self, CapacityError> {
        let table = space.subsets().map(f).collect();
        Self::validate(space, table)
    }

    /// Additive capacity from state probabilities (must sum to one).
    pub fn additive(space: Arc<StateSpace>, probs: &[f64]) -> Result<Self, CapacityError> {
        let table: Vec<f64> = space
            .subsets()
            .map(|a| {
                a.states()
                    .map(|s| probs.get(s).copied().unwrap_or(f64::NAN))
                    .sum()
            })
            .collect();
        Self::validate_with_tolerance(space, table, 1e-12)
    }

    pub fn uniform(space: Arc<StateSpace>) -> Self {
        let n = space.len() as f64;
        Self::from_fn(space, |a| a.len() as f64 / n).expect("uniform measure is a capacity")
    }

    /// `v(A) = 1` iff `A = S`.
    pub fn unanimity(space: Arc<StateSpace>) -> Self {
        let full = space.full();
        Self::from_fn(space, |a| if a == full { 1.0 } else { 0.0 })
            .expect("unanimity game is a capacity")
    }

    /// `v(A) = P(A)^2` for the uniform probability `P`.
    pub fn squared_uniform(space: Arc<StateSpace>) -> Self {
        let n = space.len() as f64;
        Self::from_fn(space, |a| (a.len() as f64 / n).powi(2)).expect("distortion of a measure")
    }

    /// Random capacity: independent uniforms per subset, running maximum along
    /// inclusion chains, then division by the value at `S`.
    pub fn random<R: Rng + ?Sized>(space: Arc<StateSpace>, rng: &mut R) -> Self {
        let count = space.subset_count();
        let mut table: Vec<f64> = (0..count).map(|_| rng.gen::<f64>()).collect();
        table[0] = 0.0;
        for mask in 1..count {
            let a = Subset(mask as u32);
            let below = a
                .states()
                .map(|s| table[a.remove(s).index()])
                .fold(0.0, f64::max);
            table[mask] = table[mask].max(below);
        }
        let top = table[count - 1];
        if top > 0.0 {
            for v in &mut table {
                *v /= top;
            }
        }
        table[count - 1] = 1.0;
        Self::validate(space, table).expect("generator emits monotone normalized tables")
    }

    pub fn space(&self) -> &Arc<StateSpace> {
        &self.space
    }

    pub fn table(&self) -> &[f64] {
        &self.table
    }

    pub fn value(&self, subset: Subset) -> f64 {
        self.table[subset.index()]
    }

    /// `v̂(A) = 1 - v(Aᶜ)`.
    pub fn conjugate(&self) -> Capacity {
        let n = self.space.len();
        let table = self
            .space
            .subsets()
            .map(|a| 1.0 - self.value(a.complement(n)))
            .collect();
        Capacity::validate_with_tolerance(Arc::clone(&self.space), table, CONVEXITY_EPS)
            .expect("conjugate of a capacity is a capacity")
    }

    /// Largest absolute difference between two tables on the same space.
    pub fn max_abs_diff(&self, other: &Capacity) -> Option<f64> {
        if self.space != other.space {
            return None;
        }
        Some(
            self.table
                .iter()
                .zip(&other.table)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max),
        )
    }

    /// First subset (ascending bitmask) where the tables differ by more than `eps`.
    pub fn first_difference(&self, other: &Capacity, eps: f64) -> Option<Subset> {
        self.space
            .subsets()
            .find(|&a| (self.value(a) - other.value(a)).abs() > eps)
    }

    pub fn is_additive(&self, eps: f64) -> bool {
        self.space.subsets().all(|a| {
            let sum: f64 = a.states().map(|s| self.value(Subset::singleton(s))).sum();
            (self.value(a) - sum).abs() <= eps
        })
    }

    /// A pair with `v(A∪B) + v(A∩B) < v(A) + v(B) - eps`, if any.
    pub fn convexity_violation(&self, eps: f64) -> Option<SubsetPair> {
        self.find_pair(|excess| excess < -eps)
    }

    /// A pair with `v(A∪B) + v(A∩B) > v(A) + v(B) + eps`, if any.
    pub fn concavity_violation(&self, eps: f64) -> Option<SubsetPair> {
        self.find_pair(|excess| excess > eps)
    }

    pub fn is_convex(&self) -> bool {
        self.convexity_violation(CONVEXITY_EPS).is_none()
    }

    pub fn is_concave(&self) -> bool {
        self.concavity_violation(CONVEXITY_EPS).is_none()
    }

    fn excess(&self, a: Subset, b: Subset) -> f64 {
        self.value(a.union(b)) + self.value(a.intersection(b)) - self.value(a) - self.value(b)
    }

    fn find_pair(&self, violates: impl Fn(f64) -> bool) -> Option<SubsetPair> {
        if self.space.len() <= EXHAUSTIVE_PAIR_LIMIT {
            self.find_pair_exhaustive(violates)
        } else {
            self.find_pair_local(violates)
        }
    }

    // Nested pairs satisfy the inequality with equality, so only pairs where
    // neither set contains the other are scanned.
    fn find_pair_exhaustive(&self, violates: impl Fn(f64) -> bool) -> Option<SubsetPair> {
        let count = self.space.subset_count() as u32;
        for a in 0..count {
            for b in (a + 1)..count {
                let (a, b) = (Subset(a), Subset(b));
                if a.is_subset_of(b) || b.is_subset_of(a) {
                    continue;
                }
                let excess = self.excess(a, b);
                if violates(excess) {
                    return Some(SubsetPair { a, b, excess });
                }
            }
        }
        None
    }

    // Supermodularity over all pairs is equivalent to the local condition on
    // pairs (A∪{i}, A∪{j}) with i, j ∉ A.
    fn find_pair_local(&self, violates: impl Fn(f64) -> bool) -> Option<SubsetPair> {
        let n = self.space.len();
        for base in self.space.subsets() {
            for i in 0..n {
                if base.contains(i) {
                    continue;
                }
                for j in (i + 1)..n {
                    if base.contains(j) {
                        continue;
                    }
                    let (a, b) = (base.insert(i), base.insert(j));
                    let excess = self.excess(a, b);
                    if violates(excess) {
                        return Some(SubsetPair { a, b, excess });
                    }
                }
            }
        }
        None
    }
}

/// Above this many states the convexity scan switches to the local condition.
const EXHAUSTIVE_PAIR_LIMIT: usize = 10;
