//! Loss-aversion elicitation from certainty equivalents, and CPT preferences.
//!
//! Take a nonnegative act `f` and a nonpositive act `g` with disjoint
//! supports and certainty equivalents `α`, `β`, `γ` of `f`, `g`, `f+g`. A CPT
//! agent with loss aversion `λ` answers
//!
//! ```text
//! γ = α + λβ          if α + λβ ≥ 0
//! γ = (α + λβ) / λ    otherwise
//! ```
//!
//! so `λ = (γ - α) / β` when `γ ≥ 0` and `λ = α / (γ - β)` when `γ < 0`.

use serde::Serialize;
use thiserror::Error;

use crate::integration::{certainty_equivalent, cpt, CptParams, IntegrationError, DEFAULT_EPS};
use crate::states_acts::Act;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ElicitationError {
    #[error("invalid triple: {0}")]
    InvalidTriple(&'static str),
    #[error("the triple cannot identify loss aversion (zero denominator)")]
    DegenerateDenominator,
    #[error("the triple implies loss aversion {0}, which no CPT agent has")]
    InconsistentTriple(f64),
    #[error("gain and loss acts have overlapping supports")]
    OverlappingSupports,
    #[error("expected a nonnegative gain act and a nonpositive loss act")]
    WrongSign,
    #[error(transparent)]
    Integration(#[from] IntegrationError),
}

/// Certainty equivalents of a gain act, a disjoint loss act and their sum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ElicitationTriple {
    alpha: f64,
    beta: f64,
    gamma: f64,
}

impl ElicitationTriple {
    pub fn new(alpha: f64, beta: f64, gamma: f64) -> Result<Self, ElicitationError> {
        if !(alpha.is_finite() && beta.is_finite() && gamma.is_finite()) {
            return Err(ElicitationError::InvalidTriple("values must be finite"));
        }
        if alpha < 0.0 {
            return Err(ElicitationError::InvalidTriple("alpha must be >= 0"));
        }
        if beta > 0.0 {
            return Err(ElicitationError::InvalidTriple("beta must be <= 0"));
        }
        Ok(Self { alpha, beta, gamma })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LossAversionKind {
    Neutral,
    Determined,
    Indeterminate,
}

impl LossAversionKind {
    pub fn name(self) -> &'static str {
        match self {
            LossAversionKind::Neutral => "neutral",
            LossAversionKind::Determined => "determined",
            LossAversionKind::Indeterminate => "indeterminate",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LossAversionResult {
    pub kind: LossAversionKind,
    /// Present for `Neutral` (always 1) and `Determined`.
    pub lambda: Option<f64>,
}

impl LossAversionResult {
    fn neutral() -> Self {
        Self {
            kind: LossAversionKind::Neutral,
            lambda: Some(1.0),
        }
    }

    fn indeterminate() -> Self {
        Self {
            kind: LossAversionKind::Indeterminate,
            lambda: None,
        }
    }
}

pub fn elicit_lambda(t: &ElicitationTriple) -> Result<LossAversionResult, ElicitationError> {
    elicit_lambda_with_tolerance(t, DEFAULT_EPS)
}

/// Recovers `λ` from one triple.
///
/// A zero `α` or `β` makes the answer independent of `λ`: such a triple is
/// `Indeterminate` when it is consistent (`γ = α + β`) and inconsistent
/// otherwise. `γ = 0` goes through the `γ ≥ 0` formula.
pub fn elicit_lambda_with_tolerance(
    t: &ElicitationTriple,
    eps: f64,
) -> Result<LossAversionResult, ElicitationError> {
    let ElicitationTriple { alpha, beta, gamma } = *t;
    let additive = (gamma - (alpha + beta)).abs() <= eps;
    if alpha.abs() <= eps || beta.abs() <= eps {
        return if additive {
            Ok(LossAversionResult::indeterminate())
        } else {
            Err(ElicitationError::InconsistentTriple(f64::NAN))
        };
    }
    if additive {
        return Ok(LossAversionResult::neutral());
    }
    let lambda = if gamma >= 0.0 {
        (gamma - alpha) / beta
    } else {
        let denom = gamma - beta;
        if denom.abs() <= eps {
            return Err(ElicitationError::DegenerateDenominator);
        }
        alpha / denom
    };
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(ElicitationError::InconsistentTriple(lambda));
    }
    Ok(LossAversionResult {
        kind: LossAversionKind::Determined,
        lambda: Some(lambda),
    })
}

/// Per-triple results plus the spread of the identified `λ` values.
#[derive(Debug, Clone, PartialEq)]
pub struct BatchElicitation {
    pub results: Vec<Result<LossAversionResult, ElicitationError>>,
    /// `max λ - min λ` over rows that identified `λ`; `None` if none did.
    pub lambda_spread: Option<f64>,
}

pub fn elicit_batch(triples: &[ElicitationTriple], eps: f64) -> BatchElicitation {
    let results: Vec<_> = triples
        .iter()
        .map(|t| elicit_lambda_with_tolerance(t, eps))
        .collect();
    let lambdas: Vec<f64> = results
        .iter()
        .filter_map(|r| r.as_ref().ok().and_then(|r| r.lambda))
        .collect();
    let lambda_spread = if lambdas.is_empty() {
        None
    } else {
        let lo = lambdas.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = lambdas.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Some(hi - lo)
    };
    BatchElicitation {
        results,
        lambda_spread,
    }
}

/// The triple a CPT agent with parameters `p` reports for `(f, g)`.
pub fn simulate_a4_triple(
    f: &Act,
    g: &Act,
    p: &CptParams,
) -> Result<ElicitationTriple, ElicitationError> {
    if !f.is_nonnegative() || !g.is_nonpositive() {
        return Err(ElicitationError::WrongSign);
    }
    if !f
        .have_disjoint_supports(g)
        .map_err(IntegrationError::from)?
    {
        return Err(ElicitationError::OverlappingSupports);
    }
    let sum = f.add(g).map_err(IntegrationError::from)?;
    ElicitationTriple::new(
        certainty_equivalent(f, p)?,
        certainty_equivalent(g, p)?,
        certainty_equivalent(&sum, p)?,
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Preference {
    FirstStrict,
    SecondStrict,
    Indifferent,
}

pub fn prefers(f: &Act, g: &Act, p: &CptParams) -> Result<Preference, IntegrationError> {
    prefers_with_tolerance(f, g, p, DEFAULT_EPS)
}

pub fn prefers_with_tolerance(
    f: &Act,
    g: &Act,
    p: &CptParams,
    eps: f64,
) -> Result<Preference, IntegrationError> {
    f.space().ensure_same(g.space())?;
    Ok(compare_values(cpt(f, p)?, cpt(g, p)?, eps))
}

/// Preference between two functional values, indifferent within `eps`.
pub fn compare_values(a: f64, b: f64, eps: f64) -> Preference {
    if (a - b).abs() <= eps {
        Preference::Indifferent
    } else if a > b {
        Preference::FirstStrict
    } else {
        Preference::SecondStrict
    }
}
