//! Bundled diagrams: the fig1 and fig2 examples, the rectangle group, and
//! standard diagrams of the finite irreducible types.

use crate::diagram::{parse_diagram, PDiagram};
use crate::finite_type::FiniteType;

const FIXTURES: &[(&str, &str)] = &[
    ("fig1_left", include_str!("../fixtures/fig1_left.cox")),
    ("fig1_right", include_str!("../fixtures/fig1_right.cox")),
    (
        "fig1_binary_left",
        include_str!("../fixtures/fig1_binary_left.cox"),
    ),
    (
        "fig1_binary_right",
        include_str!("../fixtures/fig1_binary_right.cox"),
    ),
    ("fig2_w1", include_str!("../fixtures/fig2_w1.cox")),
    ("fig2_w2", include_str!("../fixtures/fig2_w2.cox")),
    ("fig2_w3", include_str!("../fixtures/fig2_w3.cox")),
    ("fig2_w4", include_str!("../fixtures/fig2_w4.cox")),
    ("square", include_str!("../fixtures/square.cox")),
];

pub fn fixture_names() -> impl Iterator<Item = &'static str> {
    FIXTURES.iter().map(|&(name, _)| name)
}

pub fn fixture_source(name: &str) -> Option<&'static str> {
    FIXTURES
        .iter()
        .find(|&&(n, _)| n == name)
        .map(|&(_, src)| src)
}

/// Parses a bundled fixture by name.
pub fn fixture(name: &str) -> Option<PDiagram> {
    fixture_source(name).map(|src| parse_diagram(src).expect("bundled fixture parses"))
}

/// The standard diagram of a finite irreducible type on generators
/// `s1..sn`, with every non-adjacent pair labeled 2.
///
/// `A` and `C` are paths (the 4 of `C` on the last edge), `B(n)` attaches
/// `s1` and `s2` to `s3` and continues the chain `s3..sn`, and the `E` types
/// attach `s2` to `s4` on the chain `s1, s3, s4, ..`.
pub fn standard(t: FiniteType) -> PDiagram {
    let n = t.rank() as usize;
    let path = |labels: &[u32]| -> Vec<(usize, usize, u32)> {
        labels
            .iter()
            .enumerate()
            .map(|(i, &m)| (i, i + 1, m))
            .collect()
    };
    let edges: Vec<(usize, usize, u32)> = match t {
        FiniteType::A(_) => path(&vec![3; n - 1]),
        FiniteType::C(_) => {
            let mut labels = vec![3; n - 1];
            labels[n - 2] = 4;
            path(&labels)
        }
        FiniteType::D2(k) => vec![(0, 1, k)],
        FiniteType::F4 => path(&[3, 4, 3]),
        FiniteType::G3 => path(&[3, 5]),
        FiniteType::G4 => path(&[3, 3, 5]),
        FiniteType::B(_) => {
            let mut e = vec![(0, 2, 3), (1, 2, 3)];
            e.extend((2..n - 1).map(|i| (i, i + 1, 3)));
            e
        }
        FiniteType::E6 | FiniteType::E7 | FiniteType::E8 => {
            let mut e = vec![(0, 2, 3), (1, 3, 3)];
            e.extend((2..n - 1).map(|i| (i, i + 1, 3)));
            e
        }
    };
    let names: Vec<String> = (1..=n).map(|i| format!("s{i}")).collect();
    let mut d = PDiagram::new(names.clone()).expect("distinct names");
    for i in 0..n {
        for j in i + 1..n {
            let m = edges
                .iter()
                .find(|&&(a, b, _)| (a, b) == (i, j))
                .map_or(2, |&(_, _, m)| m);
            d.add_edge(&names[i], &names[j], m).expect("valid edge");
        }
    }
    d
}
