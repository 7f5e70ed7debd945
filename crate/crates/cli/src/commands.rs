use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::sync::Arc;

use cptkit::capacity::Capacity;
use cptkit::elicitation::elicit_batch;
use cptkit::integration::{certainty_equivalent_of_value, choquet, cpt, sipos, CptParams};
use cptkit::io::{
    capacity_to_json, fraction_string, parse_acts_csv, parse_capacity_json, parse_elicitation_csv,
    write_elicitation_csv, FormatError, LoadedCapacity,
};
use cptkit::representation::{
    check_monotonicity, check_restricted_comonotonic_additivity, check_symmetry,
    check_uncertainty_attitudes, extract_cpt, Functional, FunctionalOracle, RepresentationError,
    VerificationConfig,
};
use cptkit::states_acts::{Act, StateSpace};
use serde_json::json;

use crate::{FunctionalArgs, FunctionalKind, OutputFormat};

#[derive(Debug)]
pub enum CliError {
    /// Unreadable or malformed input, bad flags.
    Input(String),
    /// A capacity file that parses but is not a capacity.
    Capacity(String),
    /// Verification found a violation; the report is still printed.
    Failed { output: String, message: String },
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Input(m) | CliError::Capacity(m) => f.write_str(m),
            CliError::Failed { message, .. } => f.write_str(message),
        }
    }
}

impl std::error::Error for CliError {}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Capacity(_) => 3,
            CliError::Failed { .. } => 4,
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn load_capacity(path: &Path) -> Result<LoadedCapacity, CliError> {
    let text = read(path)?;
    parse_capacity_json(&text).map_err(|e| {
        let message = format!("{}: {e}", path.display());
        match e {
            FormatError::Capacity(_) | FormatError::MissingSubset(_) => CliError::Capacity(message),
            _ => CliError::Input(message),
        }
    })
}

/// Capacities and coefficient selected on the command line. `lambda` is not
/// range-checked so `verify` can probe malformed functionals.
struct Selection {
    kind: FunctionalKind,
    v_plus: Capacity,
    v_minus: Capacity,
    lambda: f64,
    fractions: bool,
}

fn select(args: &FunctionalArgs) -> Result<Selection, CliError> {
    if !(args.tolerance.is_finite() && args.tolerance >= 0.0) {
        return Err(CliError::Input(
            "tolerance must be a nonnegative number".into(),
        ));
    }
    let loaded = args
        .capacities
        .iter()
        .map(|p| load_capacity(p))
        .collect::<Result<Vec<_>, _>>()?;
    let fractions = loaded.iter().all(|l| l.fractions);
    let mut caps = loaded.into_iter().map(|l| l.capacity);
    match args.functional {
        FunctionalKind::Choquet | FunctionalKind::Sipos => {
            if args.capacities.len() != 1 {
                return Err(CliError::Input(
                    "choquet and sipos take exactly one --capacity".into(),
                ));
            }
            if args.lambda.is_some() {
                return Err(CliError::Input(
                    "--lambda only applies to --functional cpt".into(),
                ));
            }
            let v = caps.next().expect("one capacity");
            let v_minus = if args.functional == FunctionalKind::Choquet {
                v.conjugate()
            } else {
                v.clone()
            };
            Ok(Selection {
                kind: args.functional,
                v_plus: v,
                v_minus,
                lambda: 1.0,
                fractions,
            })
        }
        FunctionalKind::Cpt => {
            let lambda = args
                .lambda
                .ok_or_else(|| CliError::Input("--functional cpt requires --lambda".into()))?;
            if !lambda.is_finite() {
                return Err(CliError::Input("--lambda must be finite".into()));
            }
            let (v_plus, v_minus) = match (args.capacities.len(), args.symmetric) {
                (1, true) => {
                    let v = caps.next().expect("one capacity");
                    (v.clone(), v)
                }
                (2, false) => (caps.next().expect("two"), caps.next().expect("two")),
                _ => {
                    return Err(CliError::Input(
                        "--functional cpt takes two --capacity files, or one with --symmetric"
                            .into(),
                    ))
                }
            };
            if v_plus.space() != v_minus.space() {
                return Err(CliError::Input(
                    "gain and loss capacities use different states".into(),
                ));
            }
            Ok(Selection {
                kind: FunctionalKind::Cpt,
                v_plus,
                v_minus,
                lambda,
                fractions,
            })
        }
    }
}

impl Selection {
    fn space(&self) -> &Arc<StateSpace> {
        self.v_plus.space()
    }

    fn params(&self) -> Result<CptParams, CliError> {
        CptParams::new(self.v_plus.clone(), self.v_minus.clone(), self.lambda)
            .map_err(|e| CliError::Input(e.to_string()))
    }
}

struct SelectedFunctional<'a>(&'a Selection);

impl Functional for SelectedFunctional<'_> {
    fn space(&self) -> &Arc<StateSpace> {
        self.0.space()
    }

    fn eval(&self, f: &Act) -> f64 {
        let s = self.0;
        match s.kind {
            FunctionalKind::Choquet => choquet(f, &s.v_plus).expect("same space"),
            FunctionalKind::Sipos => sipos(f, &s.v_plus).expect("same space"),
            FunctionalKind::Cpt => {
                let gains = choquet(&f.positive_part(), &s.v_plus).expect("same space");
                let losses = choquet(&f.negative_part(), &s.v_minus).expect("same space");
                gains - s.lambda * losses
            }
        }
    }

    fn reentrant(&self) -> bool {
        true
    }
}

fn kind_name(kind: FunctionalKind) -> &'static str {
    match kind {
        FunctionalKind::Choquet => "choquet",
        FunctionalKind::Sipos => "sipos",
        FunctionalKind::Cpt => "cpt",
    }
}

pub fn eval(args: &FunctionalArgs, acts: &Path, format: OutputFormat) -> Result<String, CliError> {
    let sel = select(args)?;
    let params = sel.params()?;
    let table = parse_acts_csv(&read(acts)?, sel.space())
        .map_err(|e| CliError::Input(format!("{}: {e}", acts.display())))?;
    let functional = SelectedFunctional(&sel);

    let rows: Vec<(f64, f64)> = table
        .acts
        .iter()
        .map(|f| {
            let value = match sel.kind {
                FunctionalKind::Cpt => cpt(f, &params).expect("same space"),
                _ => functional.eval(f),
            };
            (value, certainty_equivalent_of_value(value, params.lambda()))
        })
        .collect();

    match format {
        OutputFormat::Table => {
            let mut out = String::new();
            writeln!(
                out,
                "{:<12} {:>14} {:>14}  {:<24} {:<24}",
                "act", "value", "ce", "positive_part", "negative_part"
            )
            .unwrap();
            for ((label, f), (value, ce)) in table.labels.iter().zip(&table.acts).zip(&rows) {
                writeln!(
                    out,
                    "{:<12} {:>14.6} {:>14.6}  {:<24} {:<24}",
                    label,
                    value,
                    ce,
                    f.positive_part().to_string(),
                    f.negative_part().to_string()
                )
                .unwrap();
            }
            Ok(out)
        }
        OutputFormat::Json => {
            let acts: Vec<_> = table
                .labels
                .iter()
                .zip(&table.acts)
                .zip(&rows)
                .map(|((label, f), &(value, ce))| {
                    let mut row = json!({
                        "label": label,
                        "payoffs": f.payoffs(),
                        "value": value,
                        "certainty_equivalent": ce,
                        "positive_part": f.positive_part().payoffs(),
                        "negative_part": f.negative_part().payoffs(),
                    });
                    if sel.fractions {
                        row["value_fraction"] = json!(fraction_string(value));
                        row["certainty_equivalent_fraction"] = json!(fraction_string(ce));
                    }
                    row
                })
                .collect();
            let doc = json!({
                "functional": kind_name(sel.kind),
                "lambda": params.lambda(),
                "states": sel.space().names(),
                "acts": acts,
            });
            Ok(format!("{}\n", serde_json::to_string_pretty(&doc).unwrap()))
        }
    }
}

pub fn verify(args: &FunctionalArgs, seed: u64, pairs: usize) -> Result<String, CliError> {
    let sel = select(args)?;
    let config = VerificationConfig {
        seed,
        eps: args.tolerance,
        random_pairs: pairs,
        ..VerificationConfig::default()
    };
    let functional = SelectedFunctional(&sel);
    let monotonicity = check_monotonicity(&functional, &config);
    let additivity = check_restricted_comonotonic_additivity(&functional, &config, &[]);

    let mut failures: Vec<String> = Vec::new();
    if !monotonicity.is_clean() {
        failures.push(format!(
            "monotonicity violated on {} of {} pairs",
            monotonicity.violation_count, monotonicity.pairs_tested
        ));
    }
    if !additivity.restricted_clean() {
        failures.push("restricted comonotonic additivity violated".into());
    }

    let extraction = match FunctionalOracle::register(&functional)
        .and_then(|oracle| extract_cpt(&oracle, &config))
    {
        Ok(ex) => {
            let p = &ex.params;
            let conjugate_of_gains = p.v_plus().conjugate();
            json!({
                "status": "ok",
                "lambda": p.lambda(),
                "v_plus": capacity_to_json(p.v_plus()),
                "v_minus": capacity_to_json(p.v_minus()),
                "v_minus_equals_v_plus": p.v_minus().max_abs_diff(p.v_plus()).unwrap() <= config.eps,
                "v_minus_equals_conjugate_v_plus":
                    p.v_minus().max_abs_diff(&conjugate_of_gains).unwrap() <= config.eps,
                "acts_checked": ex.acts_checked,
                "max_deviation": ex.max_deviation,
                "symmetry": check_symmetry(p),
                "attitudes": check_uncertainty_attitudes(p),
            })
        }
        Err(e) => {
            failures.push(e.to_string());
            let mut doc = json!({ "status": "error", "error": e.to_string() });
            if let RepresentationError::ReconstructionMismatch {
                act,
                oracle,
                reconstructed,
            } = &e
            {
                doc["witness"] = json!({
                    "act": act,
                    "oracle": oracle,
                    "reconstructed": reconstructed,
                });
            }
            doc
        }
    };

    let report = json!({
        "functional": kind_name(sel.kind),
        "states": sel.space().names(),
        "seed": seed,
        "tolerance": config.eps,
        "passed": failures.is_empty(),
        "monotonicity": monotonicity,
        "additivity": {
            "summary": additivity.summary(),
            "restricted_clean": additivity.restricted_clean(),
            "report": additivity,
        },
        "extraction": extraction,
    });
    let output = format!("{}\n", serde_json::to_string_pretty(&report).unwrap());
    if failures.is_empty() {
        Ok(output)
    } else {
        Err(CliError::Failed {
            output,
            message: failures.join("; "),
        })
    }
}

pub fn elicit(input: &Path, output: Option<&Path>, tolerance: f64) -> Result<String, CliError> {
    let triples = parse_elicitation_csv(&read(input)?)
        .map_err(|e| CliError::Input(format!("{}: {e}", input.display())))?;
    let batch = elicit_batch(&triples, tolerance);
    let csv = write_elicitation_csv(&batch.results);
    let spread = match batch.lambda_spread {
        Some(s) => format!("lambda spread over identified rows: {s}\n"),
        None => "no row identified lambda\n".to_string(),
    };
    match output {
        Some(path) => {
            fs::write(path, &csv)
                .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
            Ok(spread)
        }
        None => {
            eprint!("{spread}");
            Ok(csv)
        }
    }
}
