#![allow(dead_code)]

use std::sync::Arc;

use cptkit::capacity::Capacity;
use cptkit::integration::CptParams;
use cptkit::states_acts::{Act, StateSpace, Subset};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn space(n: usize) -> Arc<StateSpace> {
    StateSpace::numbered(n).unwrap()
}

pub fn act(space: &Arc<StateSpace>, xs: &[f64]) -> Act {
    Act::new(Arc::clone(space), xs.to_vec()).unwrap()
}

/// Payoffs uniform in `[-bound, bound]`, a third of them rounded to integers
/// so ties and zeros show up.
pub fn random_act<R: Rng>(space: &Arc<StateSpace>, rng: &mut R, bound: f64) -> Act {
    let xs = (0..space.len())
        .map(|_| {
            let x = rng.gen_range(-bound..=bound);
            if rng.gen_bool(1.0 / 3.0) {
                x.round()
            } else {
                x
            }
        })
        .collect::<Vec<_>>();
    act(space, &xs)
}

/// Two acts sorted along one random state ordering, hence comonotone.
pub fn comonotone_pair<R: Rng>(space: &Arc<StateSpace>, rng: &mut R, bound: f64) -> (Act, Act) {
    let n = space.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut draw = || {
        let mut v: Vec<f64> = (0..n).map(|_| rng.gen_range(-bound..=bound)).collect();
        v.sort_by(f64::total_cmp);
        let mut xs = vec![0.0; n];
        for (&s, x) in order.iter().zip(v) {
            xs[s] = x;
        }
        act(space, &xs)
    };
    let f = draw();
    let g = draw();
    (f, g)
}

/// Random belief function: nonnegative masses on subsets, hence convex.
pub fn random_convex_capacity<R: Rng>(space: &Arc<StateSpace>, rng: &mut R) -> Capacity {
    let count = space.subset_count();
    let mut mass: Vec<f64> = (0..count).map(|_| rng.gen::<f64>()).collect();
    mass[0] = 0.0;
    let total: f64 = mass.iter().sum();
    let table: Vec<f64> = (0..count)
        .map(|a| {
            (1..count)
                .filter(|&b| b & !a == 0)
                .map(|b| mass[b] / total)
                .sum()
        })
        .collect();
    Capacity::validate_with_tolerance(Arc::clone(space), table, 1e-12).unwrap()
}

pub fn random_params<R: Rng>(space: &Arc<StateSpace>, rng: &mut R) -> CptParams {
    let lambda = rng.gen_range(0.25..=4.0);
    CptParams::new(
        Capacity::random(Arc::clone(space), rng),
        Capacity::random(Arc::clone(space), rng),
        lambda,
    )
    .unwrap()
}

pub fn example_capacity() -> Capacity {
    let s = space(3);
    let t = 1.0 / 3.0;
    // bitmask order: ∅, s1, s2, s1s2, s3, s1s3, s2s3, S
    Capacity::validate(s, vec![0.0, 2.0 * t, t, 2.0 * t, 0.0, 1.0, 2.0 * t, 1.0]).unwrap()
}

pub struct ExampleActs {
    pub f: Act,
    pub g: Act,
    pub h: Act,
}

pub fn example_acts() -> ExampleActs {
    let s = Arc::clone(example_capacity().space());
    ExampleActs {
        f: act(&s, &[3.0, 4.0, 4.0]),
        g: act(&s, &[0.0, 11.0, 0.0]),
        h: act(&s, &[-3.0, 0.0, -1.0]),
    }
}

/// Midpoint-rule evaluation of
/// `∫_{-∞}^0 (v(f≥t) - 1) dt + ∫_0^∞ v(f≥t) dt` over `[min(f,0), max(f,0)]`.
/// The integrand has total variation at most 2, so the error is at most the
/// step width. Returns `(value, error_bound)`.
pub fn choquet_by_survival_function(f: &Act, v: &Capacity, steps: usize) -> (f64, f64) {
    let lo = f.min().min(0.0);
    let hi = f.max().max(0.0);
    if hi == lo {
        return (0.0, 0.0);
    }
    let h = (hi - lo) / steps as f64;
    let mut total = 0.0;
    for k in 0..steps {
        let t = lo + (k as f64 + 0.5) * h;
        let upper: Vec<usize> = (0..f.len()).filter(|&s| f.payoffs()[s] >= t).collect();
        let vt = v.value(Subset::from_states(upper));
        total += if t < 0.0 { vt - 1.0 } else { vt };
    }
    (total * h, h)
}

/// Full scan over all ordered subset pairs, nested ones included.
pub fn brute_force_convex(v: &Capacity, eps: f64) -> bool {
    let count = v.space().subset_count() as u32;
    (0..count).all(|a| {
        (0..count).all(|b| {
            let (a, b) = (Subset(a), Subset(b));
            v.value(a.union(b)) + v.value(a.intersection(b)) >= v.value(a) + v.value(b) - eps
        })
    })
}

pub fn brute_force_concave(v: &Capacity, eps: f64) -> bool {
    let count = v.space().subset_count() as u32;
    (0..count).all(|a| {
        (0..count).all(|b| {
            let (a, b) = (Subset(a), Subset(b));
            v.value(a.union(b)) + v.value(a.intersection(b)) <= v.value(a) + v.value(b) + eps
        })
    })
}

/// All acts with integer payoffs in `-b..=b`, written independently of the
/// library's grid.
pub fn integer_grid(space: &Arc<StateSpace>, b: i32) -> Vec<Act> {
    let mut acts = vec![Vec::new()];
    for _ in 0..space.len() {
        acts = acts
            .into_iter()
            .flat_map(|prefix: Vec<f64>| {
                (-b..=b).map(move |x| {
                    let mut p = prefix.clone();
                    p.push(x as f64);
                    p
                })
            })
            .collect();
    }
    acts.into_iter().map(|xs| act(space, &xs)).collect()
}
