//! Finite state spaces, acts and the sign/support/ranking relations between acts.
//!
//! Every other structure in the crate is indexed against a [`StateSpace`]:
//! capacities store one value per subset, acts one payoff per state. Subsets
//! are bitmasks over state indices ([`Subset`]), which caps the space at
//! [`MAX_STATES`] states.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Largest supported number of states. Subset tables hold `2^n` entries.
pub const MAX_STATES: usize = 16;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum StateError {
    #[error("a state space needs at least one state")]
    EmptySpace,
    #[error("{0} states requested, at most {MAX_STATES} are supported")]
    TooManyStates(usize),
    #[error("duplicate state label {0:?}")]
    DuplicateLabel(String),
    #[error("act has {got} payoffs but the state space has {expected} states")]
    LengthMismatch { expected: usize, got: usize },
    #[error("payoff for state {state:?} is not finite")]
    NonFinite { state: String },
    #[error("acts or capacities live on different state spaces")]
    SpaceMismatch,
}

/// Ordered finite set of named states.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StateSpace {
    names: Vec<String>,
}

impl StateSpace {
    pub fn new<I, S>(names: I) -> Result<Arc<Self>, StateError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(StateError::EmptySpace);
        }
        if names.len() > MAX_STATES {
            return Err(StateError::TooManyStates(names.len()));
        }
        for (i, name) in names.iter().enumerate() {
            if names[..i].contains(name) {
                return Err(StateError::DuplicateLabel(name.clone()));
            }
        }
        Ok(Arc::new(Self { names }))
    }

    /// States labelled `s1..sn`.
    pub fn numbered(n: usize) -> Result<Arc<Self>, StateError> {
        Self::new((1..=n).map(|i| format!("s{i}")))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.names.iter().position(|n| n == label)
    }

    /// Number of subsets, `2^n`.
    pub fn subset_count(&self) -> usize {
        1usize << self.names.len()
    }

    pub fn full(&self) -> Subset {
        Subset::full(self.len())
    }

    /// All subsets in ascending bitmask order.
    pub fn subsets(&self) -> impl Iterator<Item = Subset> {
        (0..self.subset_count() as u32).map(Subset)
    }

    /// Labels of the states in `subset`, in state order.
    pub fn labels_of(&self, subset: Subset) -> Vec<&str> {
        subset.states().map(|i| self.names[i].as_str()).collect()
    }

    pub fn ensure_same(&self, other: &StateSpace) -> Result<(), StateError> {
        if self == other {
            Ok(())
        } else {
            Err(StateError::SpaceMismatch)
        }
    }
}

/// A subset of states encoded as a bitmask over state indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Subset(pub u32);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn full(n: usize) -> Subset {
        Subset(((1u64 << n) - 1) as u32)
    }

    pub fn singleton(state: usize) -> Subset {
        Subset(1 << state)
    }

    pub fn from_states<I: IntoIterator<Item = usize>>(states: I) -> Subset {
        Subset(states.into_iter().fold(0, |m, s| m | (1 << s)))
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn contains(self, state: usize) -> bool {
        self.0 & (1 << state) != 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn insert(self, state: usize) -> Subset {
        Subset(self.0 | (1 << state))
    }

    pub fn remove(self, state: usize) -> Subset {
        Subset(self.0 & !(1 << state))
    }

    pub fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    pub fn intersection(self, other: Subset) -> Subset {
        Subset(self.0 & other.0)
    }

    pub fn complement(self, n: usize) -> Subset {
        Subset(!self.0 & Subset::full(n).0)
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    /// State indices in ascending order.
    pub fn states(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (0..32).filter(move |i| bits & (1 << i) != 0)
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, s) in self.states().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "s{}", s + 1)?;
        }
        write!(f, "}}")
    }
}

/// Real-valued payoff vector over a state space.
#[derive(Debug, Clone, PartialEq)]
pub struct Act {
    space: Arc<StateSpace>,
    payoffs: Vec<f64>,
}

impl Act {
    pub fn new(space: Arc<StateSpace>, payoffs: Vec<f64>) -> Result<Self, StateError> {
        if payoffs.len() != space.len() {
            return Err(StateError::LengthMismatch {
                expected: space.len(),
                got: payoffs.len(),
            });
        }
        if let Some(i) = payoffs.iter().position(|x| !x.is_finite()) {
            return Err(StateError::NonFinite {
                state: space.names()[i].clone(),
            });
        }
        Ok(Self { space, payoffs })
    }

    pub fn zero(space: Arc<StateSpace>) -> Self {
        let n = space.len();
        Self {
            space,
            payoffs: vec![0.0; n],
        }
    }

    /// `alpha * 1_S`.
    pub fn constant(space: Arc<StateSpace>, alpha: f64) -> Self {
        let n = space.len();
        Self {
            space,
            payoffs: vec![alpha; n],
        }
    }

    /// `alpha * 1_A`.
    pub fn indicator(space: Arc<StateSpace>, subset: Subset, alpha: f64) -> Self {
        let payoffs = (0..space.len())
            .map(|s| if subset.contains(s) { alpha } else { 0.0 })
            .collect();
        Self { space, payoffs }
    }

    pub fn space(&self) -> &Arc<StateSpace> {
        &self.space
    }

    pub fn payoffs(&self) -> &[f64] {
        &self.payoffs
    }

    pub fn len(&self) -> usize {
        self.payoffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.payoffs.is_empty()
    }

    fn map(&self, f: impl Fn(f64) -> f64) -> Act {
        Act {
            space: Arc::clone(&self.space),
            payoffs: self.payoffs.iter().map(|&x| f(x)).collect(),
        }
    }

    /// `f ∨ 0`.
    pub fn positive_part(&self) -> Act {
        self.map(|x| if x > 0.0 { x } else { 0.0 })
    }

    /// `(-f) ∨ 0`; nonnegative.
    pub fn negative_part(&self) -> Act {
        self.map(|x| if x < 0.0 { -x } else { 0.0 })
    }

    /// `-f`, with zero payoffs kept as `+0`.
    pub fn neg(&self) -> Act {
        self.map(|x| 0.0 - x)
    }

    pub fn scale(&self, alpha: f64) -> Act {
        self.map(|x| if x == 0.0 { 0.0 } else { alpha * x })
    }

    pub fn shift(&self, alpha: f64) -> Act {
        self.map(|x| x + alpha)
    }

    pub fn add(&self, other: &Act) -> Result<Act, StateError> {
        self.space.ensure_same(&other.space)?;
        Ok(Act {
            space: Arc::clone(&self.space),
            payoffs: self
                .payoffs
                .iter()
                .zip(&other.payoffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Act) -> Result<Act, StateError> {
        self.add(&other.neg())
    }

    /// States with a nonzero payoff. Exact comparison against zero.
    pub fn support(&self) -> Subset {
        Subset::from_states(
            self.payoffs
                .iter()
                .enumerate()
                .filter(|(_, &x)| x != 0.0)
                .map(|(i, _)| i),
        )
    }

    /// `{s : f(s) >= t}`.
    pub fn upper_set(&self, t: f64) -> Subset {
        Subset::from_states(
            self.payoffs
                .iter()
                .enumerate()
                .filter(|(_, &x)| x >= t)
                .map(|(i, _)| i),
        )
    }

    pub fn is_nonnegative(&self) -> bool {
        self.payoffs.iter().all(|&x| x >= 0.0)
    }

    pub fn is_nonpositive(&self) -> bool {
        self.payoffs.iter().all(|&x| x <= 0.0)
    }

    pub fn is_constant(&self) -> bool {
        self.payoffs.windows(2).all(|w| w[0] == w[1])
    }

    /// Pointwise `self >= other`.
    pub fn dominates(&self, other: &Act) -> Result<bool, StateError> {
        self.space.ensure_same(&other.space)?;
        Ok(self.payoffs.iter().zip(&other.payoffs).all(|(a, b)| a >= b))
    }

    pub fn min(&self) -> f64 {
        self.payoffs.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.payoffs
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// State indices sorted by ascending payoff, ties kept in state order.
    pub fn ascending_order(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.payoffs.len()).collect();
        order.sort_by(|&a, &b| self.payoffs[a].total_cmp(&self.payoffs[b]));
        order
    }

    /// `(f(s)-f(t))(g(s)-g(t)) >= 0` for every pair of states.
    pub fn is_comonotonic(&self, other: &Act) -> Result<bool, StateError> {
        self.space.ensure_same(&other.space)?;
        let (f, g) = (&self.payoffs, &other.payoffs);
        for s in 0..f.len() {
            for t in (s + 1)..f.len() {
                if (f[s] - f[t]) * (g[s] - g[t]) < 0.0 {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Comonotonic, and no state where one act is strictly positive while the
    /// other is strictly negative (checked in both directions).
    pub fn is_cosigned(&self, other: &Act) -> Result<bool, StateError> {
        if !self.is_comonotonic(other)? {
            return Ok(false);
        }
        Ok(self
            .payoffs
            .iter()
            .zip(&other.payoffs)
            .all(|(&a, &b)| !(a > 0.0 && b < 0.0) && !(a < 0.0 && b > 0.0)))
    }

    pub fn have_disjoint_supports(&self, other: &Act) -> Result<bool, StateError> {
        self.space.ensure_same(&other.space)?;
        Ok(self.support().intersection(other.support()).is_empty())
    }
}

impl fmt::Display for Act {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.payoffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}
