//! File formats: capacity JSON, acts CSV and elicitation CSV.
//!
//! Capacity JSON:
//!
//! ```json
//! {"states": ["s1","s2","s3"],
//!  "values": {"": 0, "s1": 0.6667, "s1,s2": 0.6667, "s1,s2,s3": 1, ...}}
//! ```
//!
//! Keys are comma-joined state labels, one per subset; a missing subset is an
//! error. With `"fractions": true` values may also be strings such as `"2/3"`.
//!
//! Acts CSV: the header's first cell names the label column and the rest are
//! state labels; every following row is a label and one payoff per state.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::capacity::{Capacity, CapacityError};
use crate::elicitation::{ElicitationError, ElicitationTriple, LossAversionResult};
use crate::states_acts::{Act, StateError, StateSpace, Subset};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FormatError {
    #[error("malformed JSON: {0}")]
    Json(String),
    #[error("malformed CSV: {0}")]
    Csv(String),
    #[error(transparent)]
    State(#[from] StateError),
    #[error(transparent)]
    Capacity(#[from] CapacityError),
    #[error("key {key:?} names unknown state {label:?}")]
    UnknownState { key: String, label: String },
    #[error("key {key:?} repeats a state")]
    RepeatedState { key: String },
    #[error("keys {first:?} and {second:?} name the same subset")]
    DuplicateSubset { first: String, second: String },
    #[error("no value for subset {0:?}")]
    MissingSubset(String),
    #[error("value for {key:?} is not a valid number: {reason}")]
    BadValue { key: String, reason: String },
    #[error("line {line}: {reason}")]
    BadRow { line: usize, reason: String },
    #[error("acts header does not match the capacity states: {0}")]
    Header(String),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct CapacityFile {
    states: Vec<String>,
    values: BTreeMap<String, serde_json::Value>,
    #[serde(default)]
    fractions: bool,
}

#[derive(Debug, Serialize)]
struct CapacityFileOut<'a> {
    states: &'a [String],
    values: BTreeMap<String, f64>,
}

/// A parsed capacity and whether its file used exact fractions.
#[derive(Debug, Clone, PartialEq)]
pub struct LoadedCapacity {
    pub capacity: Capacity,
    pub fractions: bool,
}

/// Parses a decimal token, rejecting NaN and infinities.
pub fn parse_decimal(token: &str) -> Result<f64, String> {
    let t = token.trim();
    let x: f64 = t.parse().map_err(|_| format!("{t:?} is not a number"))?;
    if !x.is_finite() {
        return Err(format!("{t:?} is not finite"));
    }
    Ok(x)
}

/// Parses `"p/q"` or an integer exactly.
pub fn parse_fraction(token: &str) -> Result<Ratio<i64>, String> {
    let t = token.trim();
    let bad = || format!("{t:?} is not a fraction");
    let (numer, denom) = match t.split_once('/') {
        Some((p, q)) => (p, q),
        None => (t, "1"),
    };
    let mut numer: i64 = numer.parse().map_err(|_| bad())?;
    let mut denom: i64 = denom.parse().map_err(|_| bad())?;
    if denom == 0 {
        return Err(format!("{t:?} has a zero denominator"));
    }
    // normalize the sign here; `Ratio::new` would overflow on i64::MIN
    if denom < 0 {
        numer = numer.checked_neg().ok_or_else(bad)?;
        denom = denom.checked_neg().ok_or_else(bad)?;
    }
    Ok(Ratio::new(numer, denom))
}

fn ratio_to_f64(r: Ratio<i64>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

fn subset_key(space: &StateSpace, subset: Subset) -> String {
    let mut labels = space.labels_of(subset);
    labels.sort_unstable();
    labels.join(",")
}

fn key_subset(space: &StateSpace, key: &str) -> Result<Subset, FormatError> {
    let mut subset = Subset::EMPTY;
    if key.trim().is_empty() {
        return Ok(subset);
    }
    for label in key.split(',').map(str::trim) {
        let s = space
            .index_of(label)
            .ok_or_else(|| FormatError::UnknownState {
                key: key.to_string(),
                label: label.to_string(),
            })?;
        if subset.contains(s) {
            return Err(FormatError::RepeatedState {
                key: key.to_string(),
            });
        }
        subset = subset.insert(s);
    }
    Ok(subset)
}

fn json_value(key: &str, value: &serde_json::Value, fractions: bool) -> Result<f64, FormatError> {
    let bad = |reason: String| FormatError::BadValue {
        key: key.to_string(),
        reason,
    };
    match value {
        serde_json::Value::Number(n) => n
            .as_f64()
            .filter(|x| x.is_finite())
            .ok_or_else(|| bad("not representable".into())),
        serde_json::Value::String(s) if fractions => {
            parse_fraction(s).map(ratio_to_f64).map_err(bad)
        }
        serde_json::Value::String(_) => Err(bad("string values need \"fractions\": true".into())),
        other => Err(bad(format!("unexpected {other}"))),
    }
}

/// Parses and validates a capacity JSON document.
pub fn parse_capacity_json(text: &str) -> Result<LoadedCapacity, FormatError> {
    let file: CapacityFile =
        serde_json::from_str(text).map_err(|e| FormatError::Json(e.to_string()))?;
    let space = StateSpace::new(file.states)?;
    let mut table: Vec<Option<(f64, &str)>> = vec![None; space.subset_count()];
    for (key, value) in &file.values {
        let subset = key_subset(&space, key)?;
        let x = json_value(key, value, file.fractions)?;
        if let Some((_, first)) = table[subset.index()] {
            return Err(FormatError::DuplicateSubset {
                first: first.to_string(),
                second: key.clone(),
            });
        }
        table[subset.index()] = Some((x, key));
    }
    let table = table
        .iter()
        .enumerate()
        .map(|(i, slot)| {
            slot.map(|(x, _)| x)
                .ok_or_else(|| FormatError::MissingSubset(subset_key(&space, Subset(i as u32))))
        })
        .collect::<Result<Vec<f64>, _>>()?;
    let capacity = Capacity::validate(space, table)?;
    Ok(LoadedCapacity {
        capacity,
        fractions: file.fractions,
    })
}

/// Capacity as a JSON value in the same schema [`parse_capacity_json`] reads.
pub fn capacity_to_json(v: &Capacity) -> serde_json::Value {
    let space = v.space();
    let values = space
        .subsets()
        .map(|a| (subset_key(space, a), v.value(a)))
        .collect();
    serde_json::to_value(CapacityFileOut {
        states: space.names(),
        values,
    })
    .expect("capacity serializes")
}

/// Named acts read from CSV.
#[derive(Debug, Clone, PartialEq)]
pub struct ActTable {
    pub labels: Vec<String>,
    pub acts: Vec<Act>,
}

fn csv_reader(text: &str) -> csv::Reader<&[u8]> {
    csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(text.as_bytes())
}

/// Parses an acts CSV onto `space`. Header columns may list the states in any
/// order but must name each exactly once. Empty input gives an empty table.
pub fn parse_acts_csv(text: &str, space: &Arc<StateSpace>) -> Result<ActTable, FormatError> {
    let mut reader = csv_reader(text);
    let mut records = reader.records();
    let mut table = ActTable {
        labels: Vec::new(),
        acts: Vec::new(),
    };
    let header = match records.next() {
        None => return Ok(table),
        Some(r) => r.map_err(|e| FormatError::Csv(e.to_string()))?,
    };
    let columns: Vec<&str> = header.iter().skip(1).collect();
    if columns.len() != space.len() {
        return Err(FormatError::Header(format!(
            "{} state columns, expected {}",
            columns.len(),
            space.len()
        )));
    }
    let mut target = Vec::with_capacity(columns.len());
    for label in &columns {
        let s = space
            .index_of(label)
            .ok_or_else(|| FormatError::Header(format!("unknown state {label:?}")))?;
        if target.contains(&s) {
            return Err(FormatError::Header(format!("state {label:?} listed twice")));
        }
        target.push(s);
    }
    for record in records {
        let record = record.map_err(|e| FormatError::Csv(e.to_string()))?;
        let line = record.position().map_or(0, |p| p.line() as usize);
        if record.len() == 1 && record[0].is_empty() {
            continue;
        }
        if record.len() != space.len() + 1 {
            return Err(FormatError::BadRow {
                line,
                reason: format!("{} fields, expected {}", record.len(), space.len() + 1),
            });
        }
        let mut payoffs = vec![0.0; space.len()];
        for (k, token) in record.iter().skip(1).enumerate() {
            payoffs[target[k]] =
                parse_decimal(token).map_err(|reason| FormatError::BadRow { line, reason })?;
        }
        table.labels.push(record[0].to_string());
        table.acts.push(Act::new(Arc::clone(space), payoffs)?);
    }
    Ok(table)
}

/// Parses `alpha,beta,gamma` rows; an optional header row is skipped.
pub fn parse_elicitation_csv(text: &str) -> Result<Vec<ElicitationTriple>, FormatError> {
    let mut reader = csv_reader(text);
    let mut triples = Vec::new();
    for (k, record) in reader.records().enumerate() {
        let record = record.map_err(|e| FormatError::Csv(e.to_string()))?;
        let line = record.position().map_or(k + 1, |p| p.line() as usize);
        if record.len() == 1 && record[0].is_empty() {
            continue;
        }
        if k == 0
            && record
                .get(0)
                .is_some_and(|c| c.eq_ignore_ascii_case("alpha"))
        {
            continue;
        }
        if record.len() != 3 {
            return Err(FormatError::BadRow {
                line,
                reason: format!("{} fields, expected alpha,beta,gamma", record.len()),
            });
        }
        let mut xs = [0.0; 3];
        for (x, token) in xs.iter_mut().zip(record.iter()) {
            *x = parse_decimal(token).map_err(|reason| FormatError::BadRow { line, reason })?;
        }
        let t = ElicitationTriple::new(xs[0], xs[1], xs[2]).map_err(|e| FormatError::BadRow {
            line,
            reason: e.to_string(),
        })?;
        triples.push(t);
    }
    Ok(triples)
}

/// `kind,lambda` rows. Unidentifiable rows are `indeterminate` with an empty
/// lambda; rows refuting every CPT agent are `inconsistent`.
pub fn write_elicitation_csv(results: &[Result<LossAversionResult, ElicitationError>]) -> String {
    let mut out = String::from("kind,lambda\n");
    for r in results {
        let (kind, lambda) = match r {
            Ok(r) => (
                r.kind.name(),
                r.lambda.map(|l| l.to_string()).unwrap_or_default(),
            ),
            Err(ElicitationError::InconsistentTriple(_)) => ("inconsistent", String::new()),
            Err(_) => ("indeterminate", String::new()),
        };
        out.push_str(kind);
        out.push(',');
        out.push_str(&lambda);
        out.push('\n');
    }
    out
}

/// `p/q` with `q <= max_denominator` within `tol` of `x`, via continued
/// fractions.
pub fn approximate_fraction(x: f64, max_denominator: i64, tol: f64) -> Option<Ratio<i64>> {
    if !x.is_finite() || x.abs() > 1e12 {
        return None;
    }
    let (mut h0, mut h1) = (0i64, 1i64);
    let (mut k0, mut k1) = (1i64, 0i64);
    let mut rest = x;
    for _ in 0..64 {
        let a = rest.floor();
        let a_int = a as i64;
        let h2 = a_int.checked_mul(h1)?.checked_add(h0)?;
        let k2 = a_int.checked_mul(k1)?.checked_add(k0)?;
        if k2 > max_denominator {
            break;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        if (x - h1 as f64 / k1 as f64).abs() <= tol {
            return Some(Ratio::new(h1, k1));
        }
        let frac = rest - a;
        if frac == 0.0 {
            break;
        }
        rest = 1.0 / frac;
    }
    (k1 != 0 && (x - h1 as f64 / k1 as f64).abs() <= tol).then(|| Ratio::new(h1, k1))
}

/// Exact fraction string such as `"7/3"` when `x` is within `1e-12` of one
/// with denominator at most 10^6.
pub fn fraction_string(x: f64) -> Option<String> {
    approximate_fraction(x, 1_000_000, 1e-12).map(|r| r.to_string())
}
