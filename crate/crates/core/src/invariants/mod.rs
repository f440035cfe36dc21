//! Diagrams of characteristic quotients: the binary and even invariants,
//! family quotients, and the spherical rank-2 invariant.
//!
//! Each invariant is a [`QuotientOutcome`] of the input by a set of power
//! relators. The binary and even invariants also have direct routes that
//! read the quotient off the odd components without running the engine;
//! both routes produce the same diagram with the same names.

mod rank2;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use thiserror::Error;

use crate::diagram::{Label, PDiagram};
use crate::finite_type::{enumerate_bases, Base, FiniteType, TypeError};
use crate::matching::{base_reduction_status, is_special_pair, ReductionStatus};
use crate::quotient::{assemble, quotient_by_power_relators, PowerRelator, QuotientOutcome};

pub use rank2::{rank2_greedy, rank2_sequence, rank2_step, Rank2Report};

/// The largest power of 2 dividing a finite label; `None` for infinity.
pub fn two_part(m: Label) -> Option<u32> {
    m.finite().map(|m| 1 << m.trailing_zeros())
}

fn run(d: &PDiagram, relators: &[PowerRelator]) -> QuotientOutcome {
    quotient_by_power_relators(d, relators).expect("invariant relators are valid")
}

/// Quotient by the normal closure of the elements of odd order: every
/// finite label drops to its 2-part.
pub fn binary_invariant(d: &PDiagram) -> QuotientOutcome {
    let relators: Vec<PowerRelator> = d
        .edges()
        .map(|(s, t, m)| PowerRelator::new(s, t, 1 << m.trailing_zeros()))
        .collect();
    run(d, &relators)
}

/// Builds a quotient on the odd components, folding the labels of all
/// cross pairs of each pair of components with `combine`.
fn on_odd_components(
    d: &PDiagram,
    pair_label: impl Fn(usize, usize) -> Label,
    combine: fn(u32, u32) -> u32,
) -> PDiagram {
    let parts = d.odd_components();
    let class: Vec<usize> = (0..d.rank())
        .map(|i| parts.block_of(i).expect("every generator has a component"))
        .collect();
    let k = parts.len();
    let mut table = vec![Label::Infinity; k * k];
    for (i, j, _) in d.edges() {
        let (a, b) = (class[i], class[j]);
        if a == b {
            continue;
        }
        let Label::Finite(m) = pair_label(i, j) else {
            continue;
        };
        let merged = match table[a * k + b] {
            Label::Infinity => m,
            Label::Finite(old) => combine(old, m),
        };
        table[a * k + b] = Label::Finite(merged);
        table[b * k + a] = Label::Finite(merged);
    }
    assemble(d, &class, |a, b| table[a * k + b]).0
}

/// The binary invariant read off directly: one vertex per odd component,
/// labeled by the least 2-part over cross pairs.
pub fn binary_direct(d: &PDiagram) -> PDiagram {
    on_odd_components(
        d,
        |i, j| two_part(d.label(i, j)).map_or(Label::Infinity, Label::Finite),
        u32::min,
    )
}

fn special_pairs(d: &PDiagram) -> Vec<(usize, usize)> {
    d.edges()
        .filter(|&(s, t, _)| is_special_pair(d, s, t))
        .map(|(s, t, _)| (s, t))
        .collect()
}

/// Quotient by special pairs reduced to 2 and odd edges eliminated.
/// Specialness is decided on `d` before any rewriting.
pub fn even_invariant(d: &PDiagram) -> QuotientOutcome {
    let mut relators: Vec<PowerRelator> = special_pairs(d)
        .into_iter()
        .map(|(s, t)| PowerRelator::new(s, t, 2))
        .collect();
    relators.extend(
        d.edges()
            .filter(|&(_, _, m)| m % 2 == 1)
            .map(|(s, t, _)| PowerRelator::new(s, t, 1)),
    );
    run(d, &relators)
}

/// The even invariant read off directly: one vertex per odd component,
/// labeled by the gcd over cross pairs of the label, taken as 2 on
/// special pairs.
pub fn even_direct(d: &PDiagram) -> PDiagram {
    let special = special_pairs(d);
    on_odd_components(
        d,
        |i, j| {
            if special.contains(&(i.min(j), i.max(j))) {
                Label::Finite(2)
            } else {
                d.label(i, j)
            }
        },
        |a, b| a.gcd(&b),
    )
}

/// Relators killing the commutator subgroup of a base: odd pairs are
/// identified, even pairs drop to 2.
pub(crate) fn commutator_relators(d: &PDiagram, base: &Base) -> Vec<PowerRelator> {
    let members = base.members.members();
    let mut out = Vec::new();
    for (k, &s) in members.iter().enumerate() {
        for &t in &members[k + 1..] {
            let m = d.label(s, t).finite().expect("pairs in a base are finite");
            out.push(PowerRelator::new(s, t, if m % 2 == 1 { 1 } else { 2 }));
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("a family needs at least one type")]
    Empty,
    #[error(transparent)]
    Type(#[from] TypeError),
}

/// A nonempty set of finite irreducible types, normalized through aliases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilySpec {
    types: BTreeSet<FiniteType>,
}

impl FamilySpec {
    pub fn new(types: impl IntoIterator<Item = FiniteType>) -> Result<Self, FamilyError> {
        let types = types
            .into_iter()
            .map(FiniteType::normalized)
            .collect::<Result<BTreeSet<_>, _>>()?;
        if types.is_empty() {
            return Err(FamilyError::Empty);
        }
        Ok(FamilySpec { types })
    }

    pub fn contains(&self, t: FiniteType) -> bool {
        t.normalized().is_ok_and(|t| self.types.contains(&t))
    }

    pub fn types(&self) -> impl Iterator<Item = FiniteType> + '_ {
        self.types.iter().copied()
    }
}

impl FromStr for FamilySpec {
    type Err = FamilyError;

    /// Comma-separated type names, e.g. `A3,C3,D2(6)`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let types = s
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(str::parse)
            .collect::<Result<Vec<FiniteType>, _>>()?;
        FamilySpec::new(types)
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.types.iter().map(ToString::to_string).collect();
        f.write_str(&names.join(","))
    }
}

/// Whether a base's commutator subgroup belongs to the family quotient: a
/// reduced base by its own type, an unreduced base by the type it matches.
fn in_family(d: &PDiagram, base: &Base, family: &FamilySpec) -> bool {
    match base_reduction_status(d, base).expect("enumerated bases are bases") {
        ReductionStatus::Reduced => family.contains(base.kind),
        ReductionStatus::UnreducedC(q) => {
            FiniteType::b(2 * q + 1).is_ok_and(|t| family.contains(t))
        }
        ReductionStatus::UnreducedD(q) => {
            FiniteType::d2(2 * q + 1).is_ok_and(|t| family.contains(t))
        }
    }
}

/// Quotient by the commutator subgroups of the bases selected by `family`.
pub fn family_quotient(d: &PDiagram, family: &FamilySpec) -> QuotientOutcome {
    let relators: Vec<PowerRelator> = enumerate_bases(d)
        .iter()
        .filter(|b| in_family(d, b, family))
        .flat_map(|b| commutator_relators(d, b))
        .collect();
    run(d, &relators)
}
