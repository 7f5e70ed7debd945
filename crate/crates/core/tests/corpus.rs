//! Replays the fuzz corpus, plus seeded byte mutations of it, through every
//! parser with the same invariants the fuzz targets assert. Runs on stable.

use std::fs;
use std::path::{Path, PathBuf};

use cptkit::capacity::{Capacity, CONVEXITY_EPS};
use cptkit::elicitation::elicit_batch;
use cptkit::io::{
    capacity_to_json, fraction_string, parse_acts_csv, parse_capacity_json, parse_decimal,
    parse_elicitation_csv, parse_fraction, write_elicitation_csv,
};
use cptkit::states_acts::StateSpace;
use cptkit::{choquet, DEFAULT_EPS};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn seeds(target: &str) -> Vec<Vec<u8>> {
    let dir: PathBuf = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../fuzz/corpus")
        .join(target);
    let mut files: Vec<_> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| e.unwrap().path())
        .collect();
    files.sort();
    let out: Vec<Vec<u8>> = files.iter().map(|p| fs::read(p).unwrap()).collect();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

const TOKENS: &[&[u8]] = &[
    b",",
    b"/",
    b"-",
    b"0",
    b"1e308",
    b"NaN",
    b"inf",
    b"\"",
    b"\n",
    b"{",
    b"}",
    b"[]",
    b"-9223372036854775808",
    b"s1",
    b"\"fractions\": true",
    b"1/0",
    b"\r\n",
];

fn mutate<R: Rng>(seed: &[u8], rng: &mut R) -> Vec<u8> {
    let mut data = seed.to_vec();
    for _ in 0..rng.gen_range(1..=4) {
        let at = if data.is_empty() {
            0
        } else {
            rng.gen_range(0..=data.len())
        };
        match rng.gen_range(0..4) {
            0 if at < data.len() => {
                data.remove(at);
            }
            1 if at < data.len() => data[at] = rng.gen(),
            2 => {
                let t = TOKENS[rng.gen_range(0..TOKENS.len())];
                data.splice(at..at, t.iter().copied());
            }
            _ => data.truncate(at),
        }
    }
    data
}

fn cases(target: &str, mutations: usize) -> Vec<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(0xF022);
    let seeds = seeds(target);
    let mut out: Vec<Vec<u8>> = seeds.clone();
    for k in 0..mutations {
        out.push(mutate(&seeds[k % seeds.len()], &mut rng));
    }
    out.into_iter()
        .filter_map(|d| String::from_utf8(d).ok())
        .collect()
}

#[test]
fn capacity_json_corpus() {
    let mut accepted = 0;
    for text in cases("capacity_json", 5000) {
        if let Ok(loaded) = parse_capacity_json(&text) {
            accepted += 1;
            let again =
                parse_capacity_json(&capacity_to_json(&loaded.capacity).to_string()).unwrap();
            assert_eq!(again.capacity.table(), loaded.capacity.table());
            let _ = loaded.capacity.conjugate();
            let _ = loaded.capacity.convexity_violation(CONVEXITY_EPS);
        }
    }
    assert!(accepted >= 4);
}

#[test]
fn acts_csv_corpus() {
    let v = Capacity::uniform(StateSpace::new(["s1", "s2", "s3"]).unwrap());
    let mut accepted = 0;
    for text in cases("acts_csv", 5000) {
        if let Ok(table) = parse_acts_csv(&text, v.space()) {
            accepted += 1;
            assert_eq!(table.labels.len(), table.acts.len());
            for f in &table.acts {
                let c = choquet(f, &v).unwrap();
                if c.is_finite() {
                    let slack = 1e-9 * f.min().abs().max(f.max().abs()).max(1.0);
                    assert!(f.min() - slack <= c && c <= f.max() + slack);
                }
            }
        }
    }
    assert!(accepted >= 3);
}

#[test]
fn elicitation_csv_corpus() {
    for text in cases("elicitation_csv", 5000) {
        if let Ok(triples) = parse_elicitation_csv(&text) {
            let batch = elicit_batch(&triples, DEFAULT_EPS);
            assert_eq!(batch.results.len(), triples.len());
            assert_eq!(
                write_elicitation_csv(&batch.results).lines().count(),
                triples.len() + 1
            );
        }
    }
}

#[test]
fn fraction_corpus() {
    for text in cases("fraction", 5000) {
        if let Ok(r) = parse_fraction(&text) {
            assert!(*r.denom() > 0);
        }
        if let Ok(x) = parse_decimal(&text) {
            assert!(x.is_finite());
            if let Some(s) = fraction_string(x) {
                let back = parse_fraction(&s).unwrap();
                let approx = *back.numer() as f64 / *back.denom() as f64;
                assert!((approx - x).abs() <= 1e-9 * x.abs().max(1.0));
            }
        }
    }
}
