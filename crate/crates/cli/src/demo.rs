//! Gain-loss hedging on three states: `f ~ g` under both Šipoš and Choquet,
//! yet adding the loss act `h` separates them under Šipoš only.

use std::fmt::Write as _;
use std::sync::Arc;

use cptkit::capacity::Capacity;
use cptkit::elicitation::{compare_values, Preference};
use cptkit::integration::{choquet, sipos, DEFAULT_EPS};
use cptkit::io::fraction_string;
use cptkit::states_acts::{Act, StateSpace, Subset};
use serde_json::json;

struct Example {
    capacity: Capacity,
    acts: Vec<(&'static str, Act)>,
}

fn example() -> Example {
    let space = StateSpace::numbered(3).expect("three states");
    let third = 1.0 / 3.0;
    let capacity = Capacity::from_fn(Arc::clone(&space), |a| match a.bits() {
        0b000 => 0.0,
        0b001 => 2.0 * third,
        0b010 => third,
        0b100 => 0.0,
        0b011 => 2.0 * third,
        0b110 => 2.0 * third,
        0b101 => 1.0,
        _ => 1.0,
    })
    .expect("example capacity is valid");
    let act = |xs: [f64; 3]| Act::new(Arc::clone(&space), xs.to_vec()).expect("act");
    let f = act([3.0, 4.0, 4.0]);
    let g = act([0.0, 11.0, 0.0]);
    let h = act([-3.0, 0.0, -1.0]);
    let fh = f.add(&h).expect("same space");
    let gh = g.add(&h).expect("same space");
    Example {
        capacity,
        acts: vec![
            ("f", f),
            ("g", g),
            ("h", h.clone()),
            ("-h", h.neg()),
            ("f+h", fh),
            ("g+h", gh),
        ],
    }
}

fn frac(x: f64) -> String {
    fraction_string(x).unwrap_or_else(|| format!("{x:.6}"))
}

fn relation(p: Preference) -> &'static str {
    match p {
        Preference::FirstStrict => "≻",
        Preference::SecondStrict => "≺",
        Preference::Indifferent => "∼",
    }
}

struct Values {
    label: &'static str,
    sipos: f64,
    choquet: f64,
}

fn values(ex: &Example) -> Vec<Values> {
    ex.acts
        .iter()
        .map(|(label, act)| Values {
            label,
            sipos: sipos(act, &ex.capacity).expect("same space"),
            choquet: choquet(act, &ex.capacity).expect("same space"),
        })
        .collect()
}

fn lookup<'a>(vals: &'a [Values], label: &str) -> &'a Values {
    vals.iter().find(|v| v.label == label).expect("known act")
}

fn subset_label(space: &StateSpace, a: Subset) -> String {
    if a.is_empty() {
        "∅".to_string()
    } else {
        space.labels_of(a).join("∪")
    }
}

pub fn table() -> String {
    let ex = example();
    let vals = values(&ex);
    let space = ex.capacity.space();
    let mut out = String::new();

    writeln!(out, "Capacity v on S = {{{}}}", space.names().join(", ")).unwrap();
    for a in space.subsets() {
        let name = format!("v({})", subset_label(space, a));
        writeln!(out, "  {name:<12} = {}", frac(ex.capacity.value(a))).unwrap();
    }

    writeln!(out, "\nActs").unwrap();
    write!(out, "  {:<5}", "").unwrap();
    for name in space.names() {
        write!(out, "{name:>5}").unwrap();
    }
    writeln!(out).unwrap();
    for (label, act) in &ex.acts {
        write!(out, "  {label:<5}").unwrap();
        for x in act.payoffs() {
            write!(out, "{x:>5}").unwrap();
        }
        writeln!(out).unwrap();
    }

    writeln!(out, "\nIntegrals").unwrap();
    for v in vals.iter().filter(|v| v.label != "-h") {
        writeln!(
            out,
            "  Š({:<3}) = {:<5} ({:>9.6})    C({:<3}) = {:<5} ({:>9.6})",
            v.label,
            frac(v.sipos),
            v.sipos,
            v.label,
            frac(v.choquet),
            v.choquet
        )
        .unwrap();
    }

    let (f, g) = (lookup(&vals, "f"), lookup(&vals, "g"));
    let (fh, gh) = (lookup(&vals, "f+h"), lookup(&vals, "g+h"));
    writeln!(out, "\nConclusion").unwrap();
    writeln!(
        out,
        "  Šipoš:   f {} g,  f+h {} g+h  ({} vs {}: gains balance losses in f+h)",
        relation(compare_values(f.sipos, g.sipos, DEFAULT_EPS)),
        relation(compare_values(fh.sipos, gh.sipos, DEFAULT_EPS)),
        frac(fh.sipos),
        frac(gh.sipos)
    )
    .unwrap();
    writeln!(
        out,
        "  Choquet: f {} g,  f+h {} g+h  ({} vs {}: h is comonotonic with f and g)",
        relation(compare_values(f.choquet, g.choquet, DEFAULT_EPS)),
        relation(compare_values(fh.choquet, gh.choquet, DEFAULT_EPS)),
        frac(fh.choquet),
        frac(gh.choquet)
    )
    .unwrap();
    out
}

fn pref_name(p: Preference) -> &'static str {
    match p {
        Preference::FirstStrict => "first_strict",
        Preference::SecondStrict => "second_strict",
        Preference::Indifferent => "indifferent",
    }
}

pub fn json() -> String {
    let ex = example();
    let vals = values(&ex);
    let space = ex.capacity.space();
    let capacity: serde_json::Map<String, serde_json::Value> = space
        .subsets()
        .map(|a| {
            let v = ex.capacity.value(a);
            (
                space.labels_of(a).join(","),
                json!({ "value": v, "fraction": frac(v) }),
            )
        })
        .collect();
    let acts: Vec<_> = ex
        .acts
        .iter()
        .zip(&vals)
        .map(|((label, act), v)| {
            json!({
                "label": label,
                "payoffs": act.payoffs(),
                "sipos": v.sipos,
                "sipos_fraction": frac(v.sipos),
                "choquet": v.choquet,
                "choquet_fraction": frac(v.choquet),
            })
        })
        .collect();
    let (f, g) = (lookup(&vals, "f"), lookup(&vals, "g"));
    let (fh, gh) = (lookup(&vals, "f+h"), lookup(&vals, "g+h"));
    let doc = json!({
        "states": space.names(),
        "capacity": capacity,
        "acts": acts,
        "preferences": {
            "sipos": {
                "f_vs_g": pref_name(compare_values(f.sipos, g.sipos, DEFAULT_EPS)),
                "f+h_vs_g+h": pref_name(compare_values(fh.sipos, gh.sipos, DEFAULT_EPS)),
            },
            "choquet": {
                "f_vs_g": pref_name(compare_values(f.choquet, g.choquet, DEFAULT_EPS)),
                "f+h_vs_g+h": pref_name(compare_values(fh.choquet, gh.choquet, DEFAULT_EPS)),
            },
        },
    });
    format!("{}\n", serde_json::to_string_pretty(&doc).unwrap())
}
