//! Black-box functional analysis.
//!
//! A [`Functional`] is any deterministic map from acts to reals. The checks in
//! this module probe one on a finite verification grid and either extract CPT
//! parameters from it or return concrete witnesses of failed conditions. A
//! clean report only means no violation was found on the instances tested.
//!
//! Grid: for at most [`VerificationConfig::exhaustive_max_states`] states every
//! act with integer payoffs in `-bound..=bound`; above that, seeded random acts
//! on the same integer range. Additivity and monotonicity checks add seeded
//! random pairs on top of the grid pairs.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::capacity::{Capacity, CapacityError, CONVEXITY_EPS};
use crate::integration::{
    choquet_unchecked, cpt_unchecked, CptParams, IntegrationError, DEFAULT_EPS,
};
use crate::states_acts::{Act, StateSpace, Subset};

/// A deterministic evaluator `Act -> f64` on a fixed state space.
pub trait Functional: Sync {
    fn space(&self) -> &Arc<StateSpace>;

    fn eval(&self, f: &Act) -> f64;

    /// Whether evaluations may run concurrently. Defaults to sequential.
    fn reentrant(&self) -> bool {
        false
    }
}

impl<T: Functional + ?Sized> Functional for &T {
    fn space(&self) -> &Arc<StateSpace> {
        (**self).space()
    }

    fn eval(&self, f: &Act) -> f64 {
        (**self).eval(f)
    }

    fn reentrant(&self) -> bool {
        (**self).reentrant()
    }
}

#[derive(Debug, Clone)]
pub struct ChoquetFunctional(pub Capacity);

impl Functional for ChoquetFunctional {
    fn space(&self) -> &Arc<StateSpace> {
        self.0.space()
    }

    fn eval(&self, f: &Act) -> f64 {
        choquet_unchecked(f, &self.0)
    }

    fn reentrant(&self) -> bool {
        true
    }
}

#[derive(Debug, Clone)]
pub struct SiposFunctional(pub Capacity);

impl Functional for SiposFunctional {
    fn space(&self) -> &Arc<StateSpace> {
        self.0.space()
    }

    fn eval(&self, f: &Act) -> f64 {
        choquet_unchecked(&f.positive_part(), &self.0)
            - choquet_unchecked(&f.negative_part(), &self.0)
    }

    fn reentrant(&self) -> bool {
        true
    }
}

#[derive(Debug, Clone)]
pub struct CptFunctional(pub CptParams);

impl Functional for CptFunctional {
    fn space(&self) -> &Arc<StateSpace> {
        self.0.space()
    }

    fn eval(&self, f: &Act) -> f64 {
        cpt_unchecked(f, &self.0)
    }

    fn reentrant(&self) -> bool {
        true
    }
}

/// Wraps a closure as a functional.
pub struct FnFunctional<F> {
    space: Arc<StateSpace>,
    eval: F,
    reentrant: bool,
}

impl<F: Fn(&Act) -> f64 + Sync> FnFunctional<F> {
    pub fn new(space: Arc<StateSpace>, eval: F) -> Self {
        Self {
            space,
            eval,
            reentrant: false,
        }
    }

    pub fn reentrant(mut self) -> Self {
        self.reentrant = true;
        self
    }
}

impl<F: Fn(&Act) -> f64 + Sync> Functional for FnFunctional<F> {
    fn space(&self) -> &Arc<StateSpace> {
        &self.space
    }

    fn eval(&self, f: &Act) -> f64 {
        (self.eval)(f)
    }

    fn reentrant(&self) -> bool {
        self.reentrant
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RepresentationError {
    #[error("functional is not normalized: I(1_S) = {0}")]
    NotNormalized(f64),
    #[error("functional is not deterministic: I(1_S) gave {first} then {second}")]
    NonDeterministic { first: f64, second: f64 },
    #[error("act {act:?} has a positive payoff at state index {state}")]
    PositiveEntry { act: Vec<f64>, state: usize },
    #[error("extracted loss aversion -I(-1_S) = {0} is not positive")]
    DegenerateLambda(f64),
    #[error("extracted {side} capacity is invalid: {source}")]
    InvalidCapacity {
        side: CapacitySide,
        #[source]
        source: CapacityError,
    },
    #[error("functional is not CPT: at act {act:?} it gives {oracle} but the extracted parameters give {reconstructed}")]
    ReconstructionMismatch {
        act: Vec<f64>,
        oracle: f64,
        reconstructed: f64,
    },
    #[error(transparent)]
    Integration(#[from] IntegrationError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CapacitySide {
    Gains,
    Losses,
}

impl std::fmt::Display for CapacitySide {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            CapacitySide::Gains => "gain",
            CapacitySide::Losses => "loss",
        })
    }
}

/// A functional that passed registration: `I(1_S) = 1` and repeatable.
pub struct FunctionalOracle<F> {
    functional: F,
}

impl<F: Functional> FunctionalOracle<F> {
    pub fn register(functional: F) -> Result<Self, RepresentationError> {
        Self::register_with_tolerance(functional, DEFAULT_EPS)
    }

    pub fn register_with_tolerance(functional: F, eps: f64) -> Result<Self, RepresentationError> {
        let one = Act::constant(Arc::clone(functional.space()), 1.0);
        let first = functional.eval(&one);
        let second = functional.eval(&one);
        if first.to_bits() != second.to_bits() {
            return Err(RepresentationError::NonDeterministic { first, second });
        }
        if !((first - 1.0).abs() <= eps) {
            return Err(RepresentationError::NotNormalized(first));
        }
        Ok(Self { functional })
    }

    pub fn inner(&self) -> &F {
        &self.functional
    }
}

impl<F: Functional> Functional for FunctionalOracle<F> {
    fn space(&self) -> &Arc<StateSpace> {
        self.functional.space()
    }

    fn eval(&self, f: &Act) -> f64 {
        self.functional.eval(f)
    }

    fn reentrant(&self) -> bool {
        self.functional.reentrant()
    }
}

/// Evaluates every act, in parallel when the functional is reentrant. Output
/// order always matches input order.
pub fn evaluate_all<F: Functional + ?Sized>(functional: &F, acts: &[Act]) -> Vec<f64> {
    if functional.reentrant() {
        acts.par_iter().map(|a| functional.eval(a)).collect()
    } else {
        acts.iter().map(|a| functional.eval(a)).collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationConfig {
    pub seed: u64,
    pub eps: f64,
    /// Integer payoff range `-bound..=bound` of grid acts.
    pub grid_bound: i32,
    pub exhaustive_max_states: usize,
    /// Random acts used as the grid above `exhaustive_max_states`.
    pub random_acts: usize,
    /// Seeded random pairs added to every pair check.
    pub random_pairs: usize,
    /// Payoff range of random pairs.
    pub pair_bound: i32,
    /// Witnesses kept per report class; counts are always complete.
    pub max_witnesses: usize,
}

impl Default for VerificationConfig {
    fn default() -> Self {
        Self {
            seed: 42,
            eps: DEFAULT_EPS,
            grid_bound: 2,
            exhaustive_max_states: 3,
            random_acts: 10_000,
            random_pairs: 10_000,
            pair_bound: 5,
            max_witnesses: 100,
        }
    }
}

impl VerificationConfig {
    pub fn with_seed(seed: u64) -> Self {
        Self {
            seed,
            ..Self::default()
        }
    }
}

/// Acts on which extraction is verified, in deterministic order.
pub fn verification_grid(space: &Arc<StateSpace>, config: &VerificationConfig) -> Vec<Act> {
    let n = space.len();
    let b = config.grid_bound;
    if n <= config.exhaustive_max_states {
        let side = (2 * b + 1) as usize;
        let total = side.pow(n as u32);
        (0..total)
            .map(|mut k| {
                let mut xs = vec![0.0; n];
                for x in xs.iter_mut().rev() {
                    *x = (k % side) as f64 - b as f64;
                    k /= side;
                }
                Act::new(Arc::clone(space), xs).expect("grid act")
            })
            .collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        (0..config.random_acts)
            .map(|_| random_int_act(space, &mut rng, -b, b))
            .collect()
    }
}

fn random_int_act<R: Rng>(space: &Arc<StateSpace>, rng: &mut R, lo: i32, hi: i32) -> Act {
    let xs = (0..space.len())
        .map(|_| rng.gen_range(lo..=hi) as f64)
        .collect();
    Act::new(Arc::clone(space), xs).expect("random act")
}

// Assigns the sorted values along a random state ordering, which makes any two
// acts built from the same ordering comonotone.
fn along_order(space: &Arc<StateSpace>, order: &[usize], mut values: Vec<i32>) -> Act {
    values.sort_unstable();
    let mut xs = vec![0.0; space.len()];
    for (&s, v) in order.iter().zip(values) {
        xs[s] = v as f64;
    }
    Act::new(Arc::clone(space), xs).expect("ordered act")
}

/// The three comonotone pair classes distinguished by the CPT characterization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PairClass {
    /// Both acts nonnegative, or both nonpositive, and comonotone.
    SameSignComonotone,
    /// One nonnegative, one nonpositive, with disjoint supports.
    OppositeSignDisjoint,
    /// Every other comonotone pair. CPT may fail additivity here.
    GeneralComonotone,
}

impl PairClass {
    pub const ALL: [PairClass; 3] = [
        PairClass::SameSignComonotone,
        PairClass::OppositeSignDisjoint,
        PairClass::GeneralComonotone,
    ];

    pub fn is_restricted(self) -> bool {
        self != PairClass::GeneralComonotone
    }

    pub fn name(self) -> &'static str {
        match self {
            PairClass::SameSignComonotone => "same_sign_comonotone",
            PairClass::OppositeSignDisjoint => "opposite_sign_disjoint",
            PairClass::GeneralComonotone => "general_comonotone",
        }
    }

    /// `None` for pairs that are not comonotone.
    pub fn classify(f: &Act, g: &Act) -> Option<PairClass> {
        if !f.is_comonotonic(g).ok()? {
            return None;
        }
        let same = (f.is_nonnegative() && g.is_nonnegative())
            || (f.is_nonpositive() && g.is_nonpositive());
        if same {
            return Some(PairClass::SameSignComonotone);
        }
        let opposite = (f.is_nonnegative() && g.is_nonpositive())
            || (f.is_nonpositive() && g.is_nonnegative());
        if opposite && f.support().intersection(g.support()).is_empty() {
            return Some(PairClass::OppositeSignDisjoint);
        }
        Some(PairClass::GeneralComonotone)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AdditivityViolation {
    pub f: Vec<f64>,
    pub g: Vec<f64>,
    /// `I(f+g) - I(f) - I(g)`.
    pub gap: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassReport {
    pub class: PairClass,
    pub pairs_tested: usize,
    pub violation_count: usize,
    pub max_abs_gap: f64,
    pub witnesses: Vec<AdditivityViolation>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AdditivityReport {
    pub pairs_tested: usize,
    /// Pairs skipped because they are not comonotone.
    pub pairs_skipped: usize,
    pub classes: Vec<ClassReport>,
}

impl AdditivityReport {
    pub fn class(&self, class: PairClass) -> &ClassReport {
        self.classes
            .iter()
            .find(|c| c.class == class)
            .expect("every class is reported")
    }

    /// No violation among same-sign and opposite-sign disjoint pairs.
    pub fn restricted_clean(&self) -> bool {
        self.classes
            .iter()
            .filter(|c| c.class.is_restricted())
            .all(|c| c.violation_count == 0)
    }

    pub fn all_clean(&self) -> bool {
        self.classes.iter().all(|c| c.violation_count == 0)
    }

    pub fn violations(&self) -> impl Iterator<Item = (PairClass, &AdditivityViolation)> {
        self.classes
            .iter()
            .flat_map(|c| c.witnesses.iter().map(move |w| (c.class, w)))
    }

    pub fn summary(&self) -> Vec<String> {
        self.classes
            .iter()
            .map(|c| {
                if c.violation_count == 0 {
                    format!(
                        "{}: no violation found on {} pairs",
                        c.class.name(),
                        c.pairs_tested
                    )
                } else {
                    format!(
                        "{}: {} violations on {} pairs (max |gap| {:.6})",
                        c.class.name(),
                        c.violation_count,
                        c.pairs_tested,
                        c.max_abs_gap
                    )
                }
            })
            .collect()
    }
}

fn grid_pairs(space: &Arc<StateSpace>, config: &VerificationConfig) -> Vec<(Act, Act)> {
    let grid = verification_grid(space, config);
    if space.len() > config.exhaustive_max_states {
        // random grid acts are paired off consecutively
        return grid
            .chunks_exact(2)
            .map(|p| (p[0].clone(), p[1].clone()))
            .collect();
    }
    let mut pairs = Vec::new();
    for i in 0..grid.len() {
        for j in i..grid.len() {
            pairs.push((grid[i].clone(), grid[j].clone()));
        }
    }
    pairs
}

fn random_class_pair<R: Rng>(
    space: &Arc<StateSpace>,
    rng: &mut R,
    class: PairClass,
    bound: i32,
) -> (Act, Act) {
    let n = space.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    match class {
        PairClass::SameSignComonotone => {
            let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
            let f = (0..n).map(|_| sign * rng.gen_range(0..=bound)).collect();
            let g = (0..n).map(|_| sign * rng.gen_range(0..=bound)).collect();
            (along_order(space, &order, f), along_order(space, &order, g))
        }
        PairClass::OppositeSignDisjoint => {
            let mut f = vec![0.0; n];
            let mut g = vec![0.0; n];
            for s in 0..n {
                match rng.gen_range(0..3) {
                    0 => f[s] = rng.gen_range(1..=bound) as f64,
                    1 => g[s] = -rng.gen_range(1..=bound) as f64,
                    _ => {}
                }
            }
            let f = Act::new(Arc::clone(space), f).expect("act");
            let g = Act::new(Arc::clone(space), g).expect("act");
            if rng.gen_bool(0.5) {
                (f, g)
            } else {
                (g, f)
            }
        }
        PairClass::GeneralComonotone => {
            let f = (0..n).map(|_| rng.gen_range(-bound..=bound)).collect();
            let g = (0..n).map(|_| rng.gen_range(-bound..=bound)).collect();
            (along_order(space, &order, f), along_order(space, &order, g))
        }
    }
}

/// Checks comonotonic additivity separately on the three pair classes.
///
/// `extra_pairs` are tested first, then the grid pairs, then
/// `config.random_pairs` seeded pairs drawn round-robin per class.
pub fn check_restricted_comonotonic_additivity<F: Functional + ?Sized>(
    oracle: &F,
    config: &VerificationConfig,
    extra_pairs: &[(Act, Act)],
) -> AdditivityReport {
    let space = oracle.space();
    let mut pairs: Vec<(Act, Act)> = extra_pairs.to_vec();
    pairs.extend(grid_pairs(space, config));
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed.wrapping_add(1));
    for k in 0..config.random_pairs {
        let class = PairClass::ALL[k % 3];
        pairs.push(random_class_pair(space, &mut rng, class, config.pair_bound));
    }

    let classified: Vec<(usize, PairClass)> = pairs
        .iter()
        .enumerate()
        .filter_map(|(i, (f, g))| PairClass::classify(f, g).map(|c| (i, c)))
        .collect();
    let gaps: Vec<f64> = {
        let run = |&(i, _): &(usize, PairClass)| {
            let (f, g) = &pairs[i];
            let sum = f.add(g).expect("same space");
            oracle.eval(&sum) - oracle.eval(f) - oracle.eval(g)
        };
        if oracle.reentrant() {
            classified.par_iter().map(run).collect()
        } else {
            classified.iter().map(run).collect()
        }
    };

    let mut classes: Vec<ClassReport> = PairClass::ALL
        .iter()
        .map(|&class| ClassReport {
            class,
            pairs_tested: 0,
            violation_count: 0,
            max_abs_gap: 0.0,
            witnesses: Vec::new(),
        })
        .collect();
    for (&(i, class), &gap) in classified.iter().zip(&gaps) {
        let report = &mut classes[class as usize];
        report.pairs_tested += 1;
        report.max_abs_gap = report.max_abs_gap.max(gap.abs());
        if !(gap.abs() <= config.eps) {
            report.violation_count += 1;
            if report.witnesses.len() < config.max_witnesses {
                let (f, g) = &pairs[i];
                report.witnesses.push(AdditivityViolation {
                    f: f.payoffs().to_vec(),
                    g: g.payoffs().to_vec(),
                    gap,
                });
            }
        }
    }
    AdditivityReport {
        pairs_tested: classified.len(),
        pairs_skipped: pairs.len() - classified.len(),
        classes,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MonotonicityViolation {
    pub larger: Vec<f64>,
    pub smaller: Vec<f64>,
    /// `I(larger) - I(smaller)`, below `-eps`.
    pub difference: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MonotonicityReport {
    pub pairs_tested: usize,
    pub violation_count: usize,
    pub witnesses: Vec<MonotonicityViolation>,
}

impl MonotonicityReport {
    pub fn is_clean(&self) -> bool {
        self.violation_count == 0
    }
}

/// Samples dominated pairs `f >= g` and flags `I(f) < I(g) - eps`.
pub fn check_monotonicity<F: Functional + ?Sized>(
    oracle: &F,
    config: &VerificationConfig,
) -> MonotonicityReport {
    let space = oracle.space();
    let mut pairs: Vec<(Act, Act)> = Vec::new();
    if space.len() <= config.exhaustive_max_states {
        let grid = verification_grid(space, config);
        for f in &grid {
            for g in &grid {
                if f != g && f.dominates(g).expect("same space") {
                    pairs.push((f.clone(), g.clone()));
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed.wrapping_add(2));
    let b = config.pair_bound;
    for _ in 0..config.random_pairs {
        let g = random_int_act(space, &mut rng, -b, b);
        let bump: Vec<f64> = (0..space.len())
            .map(|_| {
                if rng.gen_bool(0.5) {
                    rng.gen_range(0..=b) as f64
                } else {
                    0.0
                }
            })
            .collect();
        let f = g
            .add(&Act::new(Arc::clone(space), bump).expect("act"))
            .expect("same space");
        pairs.push((f, g));
    }

    let run = |(f, g): &(Act, Act)| oracle.eval(f) - oracle.eval(g);
    let diffs: Vec<f64> = if oracle.reentrant() {
        pairs.par_iter().map(run).collect()
    } else {
        pairs.iter().map(run).collect()
    };

    let mut report = MonotonicityReport {
        pairs_tested: pairs.len(),
        violation_count: 0,
        witnesses: Vec::new(),
    };
    for ((f, g), d) in pairs.iter().zip(diffs) {
        if !(d >= -config.eps) {
            report.violation_count += 1;
            if report.witnesses.len() < config.max_witnesses {
                report.witnesses.push(MonotonicityViolation {
                    larger: f.payoffs().to_vec(),
                    smaller: g.payoffs().to_vec(),
                    difference: d,
                });
            }
        }
    }
    report
}

/// Splits a nonpositive act into comonotone layers.
///
/// With payoffs sorted ascending `x1 <= ... <= xn` at states `A1, ..., An`
/// and `x(n+1) = 0`, layer `i` is `(x(i+1) - x(i)) · (-1_{A1 ∪ ... ∪ Ai})`.
/// Returns `n` layers; zero-width layers are kept as zero acts.
pub fn layer_decomposition(f: &Act) -> Result<Vec<Act>, RepresentationError> {
    if let Some(state) = f.payoffs().iter().position(|&x| x > 0.0) {
        return Err(RepresentationError::PositiveEntry {
            act: f.payoffs().to_vec(),
            state,
        });
    }
    let x = f.payoffs();
    let order = f.ascending_order();
    let space = f.space();
    let mut covered = Subset::EMPTY;
    let mut layers = Vec::with_capacity(order.len());
    for (i, &s) in order.iter().enumerate() {
        covered = covered.insert(s);
        let next = order.get(i + 1).map_or(0.0, |&t| x[t]);
        let width = next - x[s];
        let depth = if width == 0.0 { 0.0 } else { -width };
        layers.push(Act::indicator(Arc::clone(space), covered, depth));
    }
    Ok(layers)
}

/// Parameters recovered from a functional, with the verification outcome.
#[derive(Debug, Clone, PartialEq)]
pub struct Extraction {
    pub params: CptParams,
    pub acts_checked: usize,
    /// Largest `|I(f) - cpt(f, params)|` over the grid.
    pub max_deviation: f64,
}

/// Recovers `(v⁺, v⁻, λ)` from a registered oracle and verifies the
/// reconstruction on the verification grid.
///
/// `v⁺(A) = I(1_A)`, `λ = -I(-1_S)` and `v⁻(A) = -I(-1_A) / λ`.
pub fn extract_cpt<F: Functional>(
    oracle: &FunctionalOracle<F>,
    config: &VerificationConfig,
) -> Result<Extraction, RepresentationError> {
    let space = oracle.space();
    let gains: Vec<Act> = space
        .subsets()
        .map(|a| Act::indicator(Arc::clone(space), a, 1.0))
        .collect();
    let losses: Vec<Act> = space
        .subsets()
        .map(|a| Act::indicator(Arc::clone(space), a, -1.0))
        .collect();

    let lambda = -oracle.eval(&Act::constant(Arc::clone(space), -1.0));
    if !(lambda > config.eps) || !lambda.is_finite() {
        return Err(RepresentationError::DegenerateLambda(lambda));
    }

    let plus_table = evaluate_all(oracle, &gains);
    let minus_table: Vec<f64> = evaluate_all(oracle, &losses)
        .into_iter()
        .map(|v| -v / lambda)
        .collect();
    let v_plus = Capacity::validate_with_tolerance(Arc::clone(space), plus_table, config.eps)
        .map_err(|source| RepresentationError::InvalidCapacity {
            side: CapacitySide::Gains,
            source,
        })?;
    let v_minus = Capacity::validate_with_tolerance(Arc::clone(space), minus_table, config.eps)
        .map_err(|source| RepresentationError::InvalidCapacity {
            side: CapacitySide::Losses,
            source,
        })?;
    let params = CptParams::new(v_plus, v_minus, lambda)?;

    let grid = verification_grid(space, config);
    let observed = evaluate_all(oracle, &grid);
    let mut max_deviation = 0.0f64;
    for (act, value) in grid.iter().zip(observed) {
        let reconstructed = cpt_unchecked(act, &params);
        let deviation = (value - reconstructed).abs();
        if !(deviation <= config.eps) {
            return Err(RepresentationError::ReconstructionMismatch {
                act: act.payoffs().to_vec(),
                oracle: value,
                reconstructed,
            });
        }
        max_deviation = max_deviation.max(deviation);
    }
    Ok(Extraction {
        params,
        acts_checked: grid.len(),
        max_deviation,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SymmetryWitness {
    pub act: Vec<f64>,
    /// `CPT(-f)`.
    pub value_of_negation: f64,
    /// `-CPT(f)`.
    pub negated_value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SymmetryCheck {
    pub symmetric: bool,
    pub witness: Option<SymmetryWitness>,
}

/// `CPT(-f) = -CPT(f)` for all `f` holds exactly when `λ = 1` and `v⁺ = v⁻`.
/// On failure the witness is `1_S` if `λ ≠ 1`, otherwise `1_A` for the first
/// subset where the capacities differ.
pub fn check_symmetry(p: &CptParams) -> SymmetryCheck {
    check_symmetry_with_tolerance(p, DEFAULT_EPS)
}

pub fn check_symmetry_with_tolerance(p: &CptParams, eps: f64) -> SymmetryCheck {
    let space = p.space();
    let witness_subset = if (p.lambda() - 1.0).abs() > eps {
        Some(space.full())
    } else {
        p.v_plus().first_difference(p.v_minus(), eps)
    };
    match witness_subset {
        None => SymmetryCheck {
            symmetric: true,
            witness: None,
        },
        Some(a) => {
            let f = Act::indicator(Arc::clone(space), a, 1.0);
            SymmetryCheck {
                symmetric: false,
                witness: Some(SymmetryWitness {
                    value_of_negation: cpt_unchecked(&f.neg(), p),
                    negated_value: -cpt_unchecked(&f, p),
                    act: f.payoffs().to_vec(),
                }),
            }
        }
    }
}

/// First grid act with `|I(-f) + I(f)| > eps`; the sample-based symmetry
/// check for functionals whose parameters are unknown.
pub fn find_symmetry_violation<F: Functional + ?Sized>(
    oracle: &F,
    config: &VerificationConfig,
) -> Option<SymmetryWitness> {
    verification_grid(oracle.space(), config)
        .into_iter()
        .find_map(|f| {
            let value_of_negation = oracle.eval(&f.neg());
            let negated_value = -oracle.eval(&f);
            (!((value_of_negation - negated_value).abs() <= config.eps)).then(|| SymmetryWitness {
                act: f.payoffs().to_vec(),
                value_of_negation,
                negated_value,
            })
        })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct UncertaintyAttitudes {
    /// `v⁺` convex: uncertainty aversion for gains.
    pub convex_gains: bool,
    /// `v⁻` convex: uncertainty seeking for losses.
    pub convex_losses: bool,
    /// `v̂⁻` concave; always equal to `convex_losses`.
    pub conjugate_loss_concave: bool,
}

pub fn check_uncertainty_attitudes(p: &CptParams) -> UncertaintyAttitudes {
    UncertaintyAttitudes {
        convex_gains: p.v_plus().convexity_violation(CONVEXITY_EPS).is_none(),
        convex_losses: p.v_minus().convexity_violation(CONVEXITY_EPS).is_none(),
        conjugate_loss_concave: p
            .v_minus()
            .conjugate()
            .concavity_violation(CONVEXITY_EPS)
            .is_none(),
    }
}
