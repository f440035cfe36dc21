//! The spherical rank-2 invariant: quotienting out, stage by stage, the
//! characteristic subgroups of all bases of rank above 2.

use crate::diagram::{Label, PDiagram};
use crate::finite_type::{enumerate_bases, Base, FiniteType, Layout};
use crate::quotient::{
    eliminate_edge, quotient_by_power_relators, reduce_edge_label, PowerRelator, QuotientOutcome,
    Step,
};

use super::commutator_relators;

/// The tower `W^(1), .., W^(ℓ)` of a diagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rank2Report {
    /// Stage diagrams, starting with the input.
    pub stages: Vec<PDiagram>,
    /// The spherical rank-2 class, the number of stages.
    pub ell: usize,
    /// The last stage, which has no base of rank above 2.
    pub final_diagram: PDiagram,
    /// Input generator to generator of `final_diagram`.
    pub class_map: Vec<usize>,
    /// Engine steps of each stage transition.
    pub traces: Vec<Vec<Step>>,
}

fn path(d: &PDiagram, base: &Base) -> Vec<usize> {
    match base.layout(d) {
        Layout::Path(p) => p,
        Layout::Star { .. } => unreachable!("{} is a path", base.kind),
    }
}

/// Generators of the characteristic subgroup of one base of rank above 2.
fn base_relators(d: &PDiagram, base: &Base) -> Vec<PowerRelator> {
    let r = PowerRelator::new;
    match base.kind {
        FiniteType::A(3) => {
            let p = path(d, base);
            vec![r(p[0], p[2], 1)]
        }
        FiniteType::B(4) => {
            let Layout::Star { arms, .. } = base.layout(d) else {
                unreachable!("B4 is a star")
            };
            let mut tips: Vec<usize> = arms.iter().map(|arm| arm[0]).collect();
            tips.sort_unstable();
            vec![r(tips[0], tips[1], 1), r(tips[1], tips[2], 1)]
        }
        // The 4-edge is the last edge of the path.
        FiniteType::C(3) => {
            let p = path(d, base);
            vec![r(p[1], p[2], 2)]
        }
        FiniteType::C(4) => {
            let p = path(d, base);
            vec![r(p[0], p[2], 1)]
        }
        FiniteType::F4 => {
            let p = path(d, base);
            vec![r(p[1], p[2], 2)]
        }
        _ => commutator_relators(d, base),
    }
}

/// One stage: `W` modulo the characteristic subgroups of all its bases of
/// rank above 2, taken jointly.
pub fn rank2_step(d: &PDiagram) -> QuotientOutcome {
    let relators: Vec<PowerRelator> = enumerate_bases(d)
        .iter()
        .filter(|b| b.rank() > 2)
        .flat_map(|b| base_relators(d, b))
        .collect();
    quotient_by_power_relators(d, &relators).expect("base relators are valid")
}

fn has_large_base(d: &PDiagram) -> bool {
    enumerate_bases(d).iter().any(|b| b.rank() > 2)
}

/// Iterates [`rank2_step`] until no base of rank above 2 remains.
pub fn rank2_sequence(d: &PDiagram) -> Rank2Report {
    let mut stages = vec![d.clone()];
    let mut total = QuotientOutcome::identity(d);
    let mut traces = Vec::new();
    while has_large_base(stages.last().expect("nonempty")) {
        let step = rank2_step(stages.last().expect("nonempty"));
        stages.push(step.diagram.clone());
        traces.push(step.trace.clone());
        total = total.then(step);
    }
    Rank2Report {
        ell: stages.len(),
        final_diagram: total.diagram,
        class_map: total.class_map,
        stages,
        traces,
    }
}

/// The first induced triple, in name order, whose pairs are all finite
/// with labels 3, 2 and one of 3, 4, 5. Returns the 2-pair and the other
/// non-3 pair if its label is 4.
fn find_triple(d: &PDiagram, order: &[usize]) -> Option<((usize, usize), Option<(usize, usize)>)> {
    let n = order.len();
    for x in 0..n {
        for y in x + 1..n {
            for z in y + 1..n {
                let (p, q, r) = (order[x], order[y], order[z]);
                let pairs = [(p, q), (p, r), (q, r)];
                let mut labels = [0u32; 3];
                for (k, &(a, b)) in pairs.iter().enumerate() {
                    match d.label(a, b) {
                        Label::Finite(m) => labels[k] = m,
                        Label::Infinity => break,
                    }
                }
                if labels.contains(&0) {
                    continue;
                }
                let mut sorted = labels;
                sorted.sort_unstable();
                if !matches!(sorted, [2, 3, 3] | [2, 3, 4] | [2, 3, 5]) {
                    continue;
                }
                let two = pairs[labels.iter().position(|&m| m == 2).expect("has a 2")];
                let four = labels.iter().position(|&m| m == 4).map(|k| pairs[k]);
                return Some((two, four));
            }
        }
    }
    None
}

/// The rank-2 quotient by local moves: while some induced triple is of
/// type `A3` or `G3`, eliminate its 2-pair; while one is of type `C3`,
/// reduce its 4 to 2.
pub fn rank2_greedy(d: &PDiagram) -> QuotientOutcome {
    let mut total = QuotientOutcome::identity(d);
    loop {
        let current = &total.diagram;
        let mut order: Vec<usize> = (0..current.rank()).collect();
        order.sort_by_key(|&i| current.name(i));
        let Some((two, four)) = find_triple(current, &order) else {
            return total;
        };
        let step = match four {
            Some((a, b)) => reduce_edge_label(current, a, b, 2),
            None => eliminate_edge(current, two.0, two.1),
        }
        .expect("triple moves are valid");
        total = total.then(step);
    }
}
