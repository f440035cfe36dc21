//! The `verify` table: known orders recomputed by coset enumeration.

use std::fmt::Write as _;

use serde_json::json;

use coxeter_quotients::fixtures::standard;
use coxeter_quotients::{
    coxeter_order, enumerate_bases, exchange, family_quotient, group_order, rank2_step, FiniteType,
    Order, PDiagram, PowerRelator,
};

struct Check {
    name: String,
    expected: u64,
    got: Order,
}

fn order(d: &PDiagram, extra: &[PowerRelator], max: usize) -> Order {
    group_order(d, extra, max).expect("relators are on the diagram")
}

fn relators(d: &PDiagram, spec: &[(&str, &str, u32)]) -> Vec<PowerRelator> {
    spec.iter()
        .map(|&(s, t, e)| PowerRelator::by_name(d, s, t, e).expect("standard names"))
        .collect()
}

fn checks(max: usize) -> Vec<Check> {
    let mut out = Vec::new();
    let types = [
        "A1", "A2", "A3", "A4", "B4", "C2", "C3", "C4", "D2(5)", "D2(6)", "D2(8)", "F4", "G3", "G4",
    ];
    for name in types {
        let t: FiniteType = name.parse().expect("known type");
        let expected = u64::try_from(coxeter_order(t)).expect("small order");
        out.push(Check {
            name: format!("|{name}|"),
            expected,
            got: order(&standard(t), &[], max),
        });
    }

    // The characteristic quotients of the rank 3 and 4 bases, with the
    // generators of the standard diagrams.
    let rules: [(&str, &[(&str, &str, u32)], u64); 5] = [
        ("A3", &[("s1", "s3", 1)], 6),
        ("B4", &[("s1", "s2", 1), ("s2", "s4", 1)], 6),
        ("C3", &[("s2", "s3", 2)], 12),
        ("C4", &[("s1", "s3", 1)], 12),
        ("F4", &[("s2", "s3", 2)], 36),
    ];
    for (name, spec, expected) in rules {
        let d = standard(name.parse().expect("known type"));
        out.push(Check {
            name: format!("|{name}/N({name})|"),
            expected,
            got: order(&d, &relators(&d, spec), max),
        });
        out.push(Check {
            name: format!("|{name}| after one rank-2 stage"),
            expected,
            got: order(&rank2_step(&d).diagram, &[], max),
        });
    }

    for (name, expected) in [("C3", 48), ("C5", 3840), ("D2(6)", 12), ("D2(10)", 20)] {
        let d = standard(name.parse().expect("known type"));
        let base = enumerate_bases(&d).remove(0);
        let swapped = exchange(&d, &base).expect("standalone base is unreduced");
        out.push(Check {
            name: format!("|{name}| after exchange"),
            expected,
            got: order(&swapped, &[], max),
        });
    }

    let c3 = standard(FiniteType::C(3));
    out.push(Check {
        name: "|C3 / commutators of the A3 family|".into(),
        expected: 4,
        got: order(
            &family_quotient(&c3, &"A3".parse().expect("known type")).diagram,
            &[],
            max,
        ),
    });
    let d12 = PDiagram::from_edges(["s", "t"], &[("s", "t", 12)]).expect("valid diagram");
    out.push(Check {
        name: "|D2(12) binary quotient|".into(),
        expected: 8,
        got: order(&coxeter_quotients::binary_invariant(&d12).diagram, &[], max),
    });
    out
}

/// Runs every check; returns the report and whether all passed.
pub fn run(max_cosets: usize, as_json: bool) -> (String, bool) {
    let all = checks(max_cosets);
    let pass = |c: &Check| c.got == Order::Finite(c.expected);
    let passed = all.iter().all(pass);
    if as_json {
        let rows: Vec<_> = all
            .iter()
            .map(|c| {
                json!({
                    "check": c.name,
                    "expected": c.expected,
                    "got": c.got.finite(),
                    "pass": pass(c),
                })
            })
            .collect();
        return (
            json!({ "max_cosets": max_cosets, "checks": rows, "passed": passed }).to_string(),
            passed,
        );
    }
    let width = all
        .iter()
        .map(|c| c.name.chars().count())
        .max()
        .unwrap_or(0);
    let mut s = String::new();
    for c in &all {
        let _ = writeln!(
            s,
            "{:<width$}  {:>6}  {:>6}  {}",
            c.name,
            c.expected,
            c.got.to_string(),
            if pass(c) { "PASS" } else { "FAIL" },
        );
    }
    let failures = all.iter().filter(|c| !pass(c)).count();
    let _ = write!(
        s,
        "{} checks, {failures} failed (max cosets {max_cosets})",
        all.len()
    );
    (s, passed)
}
