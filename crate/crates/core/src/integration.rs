//! Choquet, Šipoš and piecewise-linear CPT functionals.
//!
//! For a finite act the Choquet integral reduces to a layer sum over the
//! payoffs sorted in ascending order:
//!
//! ```text
//! C(f) = x(1) + Σ_{i≥2} (x(i) - x(i-1)) · v({s : f(s) ≥ x(i)})
//! ```
//!
//! Equal payoffs give zero-width layers, so the tie order does not matter.

use std::sync::Arc;

use thiserror::Error;

use crate::capacity::Capacity;
use crate::states_acts::{Act, StateError, StateSpace, Subset};

/// Default comparison tolerance.
pub const DEFAULT_EPS: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum IntegrationError {
    #[error(transparent)]
    State(#[from] StateError),
    #[error("loss-aversion coefficient must be positive and finite, got {0}")]
    InvalidLambda(f64),
}

/// Choquet integral of `f` with respect to `v`.
pub fn choquet(f: &Act, v: &Capacity) -> Result<f64, IntegrationError> {
    f.space().ensure_same(v.space())?;
    Ok(choquet_unchecked(f, v))
}

pub(crate) fn choquet_unchecked(f: &Act, v: &Capacity) -> f64 {
    let x = f.payoffs();
    let order = f.ascending_order();
    let mut upper = f.space().full();
    let mut total = x[order[0]];
    for w in 1..order.len() {
        upper = upper.remove(order[w - 1]);
        let width = x[order[w]] - x[order[w - 1]];
        if width != 0.0 {
            total += width * v.value(upper);
        }
    }
    total
}

/// `∫f⁺dv - ∫f⁻dv`.
pub fn sipos(f: &Act, v: &Capacity) -> Result<f64, IntegrationError> {
    f.space().ensure_same(v.space())?;
    Ok(choquet_unchecked(&f.positive_part(), v) - choquet_unchecked(&f.negative_part(), v))
}

/// Gain capacity, loss capacity and loss-aversion coefficient.
#[derive(Debug, Clone, PartialEq)]
pub struct CptParams {
    v_plus: Capacity,
    v_minus: Capacity,
    lambda: f64,
}

impl CptParams {
    pub fn new(v_plus: Capacity, v_minus: Capacity, lambda: f64) -> Result<Self, IntegrationError> {
        v_plus.space().ensure_same(v_minus.space())?;
        if !(lambda.is_finite() && lambda > 0.0) {
            return Err(IntegrationError::InvalidLambda(lambda));
        }
        Ok(Self {
            v_plus,
            v_minus,
            lambda,
        })
    }

    /// `λ = 1`, `v⁺ = v⁻ = v`: the Šipoš integral.
    pub fn sipos(v: Capacity) -> Self {
        Self {
            v_plus: v.clone(),
            v_minus: v,
            lambda: 1.0,
        }
    }

    /// `λ = 1`, `v⁺ = v`, `v⁻ = v̂`: the Choquet integral.
    pub fn choquet(v: Capacity) -> Self {
        Self {
            v_minus: v.conjugate(),
            v_plus: v,
            lambda: 1.0,
        }
    }

    pub fn v_plus(&self) -> &Capacity {
        &self.v_plus
    }

    pub fn v_minus(&self) -> &Capacity {
        &self.v_minus
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn space(&self) -> &Arc<StateSpace> {
        self.v_plus.space()
    }
}

/// `∫f⁺dv⁺ - λ∫f⁻dv⁻`.
pub fn cpt(f: &Act, p: &CptParams) -> Result<f64, IntegrationError> {
    f.space().ensure_same(p.space())?;
    Ok(cpt_unchecked(f, p))
}

pub(crate) fn cpt_unchecked(f: &Act, p: &CptParams) -> f64 {
    choquet_unchecked(&f.positive_part(), &p.v_plus)
        - p.lambda * choquet_unchecked(&f.negative_part(), &p.v_minus)
}

/// The constant `c` with `cpt(c·1_S) = cpt(f)`.
pub fn certainty_equivalent(f: &Act, p: &CptParams) -> Result<f64, IntegrationError> {
    let value = cpt(f, p)?;
    Ok(certainty_equivalent_of_value(value, p.lambda))
}

/// Certainty equivalent from an already computed CPT value.
pub fn certainty_equivalent_of_value(value: f64, lambda: f64) -> f64 {
    if value >= 0.0 {
        value
    } else {
        value / lambda
    }
}

/// `cpt(f+g) - cpt(f) - cpt(g)`; positive when combining the acts gains value.
pub fn hedging_gap(f: &Act, g: &Act, p: &CptParams) -> Result<f64, IntegrationError> {
    let sum = f.add(g)?;
    Ok(cpt(&sum, p)? - cpt(f, p)? - cpt(g, p)?)
}

/// `C(1_A) = v(A)`; convenience used by extraction and tests.
pub fn indicator_value(v: &Capacity, a: Subset) -> f64 {
    choquet_unchecked(&Act::indicator(Arc::clone(v.space()), a, 1.0), v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::capacity::tests::example_capacity;

    const EXACT: f64 = 1e-12;

    fn act(xs: &[f64]) -> Act {
        Act::new(StateSpace::numbered(xs.len()).unwrap(), xs.to_vec()).unwrap()
    }

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() <= EXACT
    }

    #[test]
    fn choquet_example_values() {
        let v = example_capacity();
        assert!(close(
            choquet(&act(&[3.0, 4.0, 4.0]), &v).unwrap(),
            11.0 / 3.0
        ));
        assert!(close(
            choquet(&act(&[0.0, 11.0, 0.0]), &v).unwrap(),
            11.0 / 3.0
        ));
        assert!(close(
            choquet(&act(&[-3.0, 11.0, -1.0]), &v).unwrap(),
            7.0 / 3.0
        ));
        assert!(close(
            choquet(&act(&[-3.0, 0.0, -1.0]), &v).unwrap(),
            -4.0 / 3.0
        ));
        assert!(close(
            choquet(&act(&[0.0, 4.0, 3.0]), &v).unwrap(),
            7.0 / 3.0
        ));
        for a in v.space().subsets() {
            assert_eq!(indicator_value(&v, a), v.value(a));
        }
    }

    #[test]
    fn sipos_example_values() {
        let v = example_capacity();
        assert!(close(sipos(&act(&[0.0, 4.0, 3.0]), &v).unwrap(), 7.0 / 3.0));
        assert!(close(
            sipos(&act(&[-3.0, 11.0, -1.0]), &v).unwrap(),
            4.0 / 3.0
        ));
        let f = act(&[3.0, 4.0, 4.0]);
        assert_eq!(sipos(&f, &v).unwrap(), choquet(&f, &v).unwrap());
    }

    #[test]
    fn zero_act_is_zero_everywhere() {
        let v = example_capacity();
        let z = Act::zero(Arc::clone(v.space()));
        let p = CptParams::new(v.clone(), v.conjugate(), 2.5).unwrap();
        assert_eq!(choquet(&z, &v).unwrap(), 0.0);
        assert_eq!(sipos(&z, &v).unwrap(), 0.0);
        assert_eq!(cpt(&z, &p).unwrap(), 0.0);
        assert_eq!(certainty_equivalent(&z, &p).unwrap(), 0.0);
    }

    #[test]
    fn cpt_examples() {
        let v = example_capacity();
        let s = Arc::clone(v.space());
        let sip = CptParams::sipos(v.clone());
        for xs in [[3.0, 4.0, 4.0], [-3.0, 11.0, -1.0], [-1.0, -2.0, 5.0]] {
            let f = act(&xs);
            assert_eq!(cpt(&f, &sip).unwrap(), sipos(&f, &v).unwrap());
        }
        let p2 = CptParams::new(v.clone(), v.clone(), 2.0).unwrap();
        assert_eq!(
            cpt(&Act::constant(Arc::clone(&s), -1.0), &p2).unwrap(),
            -2.0
        );
        assert!(close(cpt(&act(&[-3.0, 11.0, -1.0]), &p2).unwrap(), -1.0));
    }

    #[test]
    fn certainty_equivalents() {
        let v = example_capacity();
        let s = Arc::clone(v.space());
        let sip = CptParams::sipos(v.clone());
        assert!(close(
            certainty_equivalent(&act(&[3.0, 4.0, 4.0]), &sip).unwrap(),
            11.0 / 3.0
        ));
        let p2 = CptParams::new(v.clone(), v, 2.0).unwrap();
        assert!(close(
            certainty_equivalent(&act(&[-3.0, 11.0, -1.0]), &p2).unwrap(),
            -0.5
        ));
        for alpha in [-4.5, -1.0, 0.0, 0.25, 7.0] {
            let c = Act::constant(Arc::clone(&s), alpha);
            assert!(close(certainty_equivalent(&c, &p2).unwrap(), alpha));
        }
    }

    #[test]
    fn hedging_gaps() {
        let v = example_capacity();
        let sip = CptParams::sipos(v);
        let f = act(&[3.0, 4.0, 4.0]);
        let g = act(&[0.0, 11.0, 0.0]);
        let h = act(&[-3.0, 0.0, -1.0]);
        assert!(hedging_gap(&g, &h, &sip).unwrap().abs() <= EXACT);
        assert!(close(hedging_gap(&f, &h, &sip).unwrap(), 1.0));
        assert!(hedging_gap(&f, &g, &sip).unwrap().abs() <= EXACT);
    }

    #[test]
    fn rejects_bad_lambda_and_spaces() {
        let v = example_capacity();
        for bad in [0.0, -1.0, f64::NAN, f64::INFINITY] {
            assert!(matches!(
                CptParams::new(v.clone(), v.clone(), bad),
                Err(IntegrationError::InvalidLambda(_))
            ));
        }
        let other = Act::zero(StateSpace::numbered(2).unwrap());
        assert!(choquet(&other, &v).is_err());
        assert!(sipos(&other, &v).is_err());
        let w = Capacity::uniform(StateSpace::numbered(2).unwrap());
        assert!(CptParams::new(v, w, 1.0).is_err());
    }
}
