//! Special pairs, reduced and unreduced bases, and the generator exchanges
//! that rewrite an unreduced base into a matching one.
//!
//! An unreduced `C(2q+1)` base trades its end generator `a` (on the 4-edge)
//! for `d = aba` and the central longest element `z`, giving a `B(2q+1)`
//! base next to a commuting `A1`. An unreduced `D2(4q+2)` base `{a, b}`
//! trades `a` for `c = aba` and `z`, giving `D2(2q+1)` beside an `A1`.
//! Outside the base, a generator that saw `a` through a finite label sees
//! both new generators through 2; one that did not sees neither.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::diagram::{Label, PDiagram};
use crate::finite_type::{base_of, Base, FiniteType, Layout};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatchingError {
    #[error("{{{}}} is not a base", .0.join(", "))]
    NotABase(Vec<String>),
    #[error("base {{{}}} is {status}", .members.join(", "))]
    WrongStatus {
        members: Vec<String>,
        status: ReductionStatus,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ReductionStatus {
    Reduced,
    /// A `C(2q+1)` base meeting the exchange condition.
    UnreducedC(u32),
    /// A `D2(4q+2)` base whose pair is special.
    UnreducedD(u32),
}

impl std::fmt::Display for ReductionStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Reduced => f.write_str("reduced"),
            Self::UnreducedC(q) => write!(f, "unreduced C (q = {q})"),
            Self::UnreducedD(q) => write!(f, "unreduced D (q = {q})"),
        }
    }
}

fn witnesses(d: &PDiagram, a: usize, b: usize) -> bool {
    (0..d.rank())
        .filter(|&s| s != a && s != b && d.label(s, b).is_finite())
        .all(|s| d.label(s, a) == Label::Finite(2) && d.label(s, b) == Label::Finite(2))
}

/// The witnesses `v` of a special pair, least name first.
fn special_witness(d: &PDiagram, a: usize, b: usize) -> Option<usize> {
    let Label::Finite(m) = d.label(a, b) else {
        return None;
    };
    if m % 4 != 2 || m < 6 {
        return None;
    }
    let mut candidates = [a, b];
    candidates.sort_by_key(|&v| d.name(v));
    candidates.into_iter().find(|&v| {
        let other = if v == a { b } else { a };
        witnesses(d, other, v)
    })
}

/// Whether `m(a,b) ≡ 2 mod 4`, `m(a,b) ≥ 6`, and one of `a`, `b` sees
/// every other generator it is joined to only through commuting labels
/// with both.
pub fn is_special_pair(d: &PDiagram, a: usize, b: usize) -> bool {
    assert_ne!(a, b, "a special pair needs two generators");
    special_witness(d, a, b).is_some()
}

fn names(d: &PDiagram, base: &Base) -> Vec<String> {
    base.members
        .names(d)
        .into_iter()
        .map(String::from)
        .collect()
}

fn checked_base(d: &PDiagram, base: &Base) -> Result<(), MatchingError> {
    match base_of(d, &base.members) {
        Some(b) if b.kind == base.kind => Ok(()),
        _ => Err(MatchingError::NotABase(names(d, base))),
    }
}

/// The chain `c1, c2, ..` of a `C(n)` base with `m(c1,c2) = 4`.
fn c_chain(d: &PDiagram, base: &Base) -> Vec<usize> {
    match base.layout(d) {
        Layout::Path(mut p) => {
            p.reverse();
            p
        }
        Layout::Star { .. } => unreachable!("C types are paths"),
    }
}

pub fn base_reduction_status(d: &PDiagram, base: &Base) -> Result<ReductionStatus, MatchingError> {
    checked_base(d, base)?;
    Ok(match base.kind {
        FiniteType::C(n) if n % 2 == 1 => {
            let a = c_chain(d, base)[0];
            let unreduced = (0..d.rank())
                .filter(|&s| !base.members.contains(s) && d.label(s, a).is_finite())
                .all(|s| {
                    base.members
                        .members()
                        .iter()
                        .all(|&t| d.label(s, t) == Label::Finite(2))
                });
            if unreduced {
                ReductionStatus::UnreducedC((n - 1) / 2)
            } else {
                ReductionStatus::Reduced
            }
        }
        FiniteType::D2(m) if m % 4 == 2 && m >= 6 => {
            let [a, b] = base.members.members() else {
                unreachable!("dihedral bases have two members")
            };
            if is_special_pair(d, *a, *b) {
                ReductionStatus::UnreducedD((m - 2) / 4)
            } else {
                ReductionStatus::Reduced
            }
        }
        _ => ReductionStatus::Reduced,
    })
}

fn fresh(d: &PDiagram, taken: &[String], base: String) -> String {
    let mut name = base;
    while d.index_of(&name).is_ok() || taken.contains(&name) {
        name.push('\'');
    }
    name
}

/// Replaces generator `a` by `new` (at `a`'s position) and appends `z`.
/// `inside` gives labels from `new` and `z` to the generators of `base`
/// other than `a`; generators outside the base see both through 2 when
/// they saw `a` through a finite label.
fn rewrite(
    d: &PDiagram,
    members: &[usize],
    a: usize,
    new: String,
    z: String,
    inside: impl Fn(usize) -> (Option<u32>, u32),
) -> PDiagram {
    let n = d.rank();
    let mut names: Vec<String> = d.names().to_vec();
    names[a] = new;
    names.push(z);
    let zi = n;
    let mut edges = BTreeMap::new();
    for (i, j, m) in d.edges() {
        if i != a && j != a {
            edges.insert((i, j), m);
        }
    }
    let key = |i: usize, j: usize| (i.min(j), i.max(j));
    for t in 0..n {
        if t == a {
            continue;
        }
        if members.contains(&t) {
            let (to_new, to_z) = inside(t);
            if let Some(m) = to_new {
                edges.insert(key(a, t), m);
            }
            edges.insert(key(t, zi), to_z);
        } else if d.label(t, a).is_finite() {
            edges.insert(key(a, t), 2);
            edges.insert(key(t, zi), 2);
        }
    }
    edges.insert(key(a, zi), 2);
    PDiagram::from_parts(names, edges)
}

fn require(
    d: &PDiagram,
    base: &Base,
    ok: bool,
    status: ReductionStatus,
) -> Result<(), MatchingError> {
    if ok {
        Ok(())
    } else {
        Err(MatchingError::WrongStatus {
            members: names(d, base),
            status,
        })
    }
}

/// Rewrites an unreduced `C(2q+1)` base into `B(2q+1)` plus a commuting
/// generator. The new generators are named `aba` (concatenated names) and
/// `z`, primed until fresh.
pub fn exchange_c(d: &PDiagram, base: &Base) -> Result<PDiagram, MatchingError> {
    let status = base_reduction_status(d, base)?;
    require(
        d,
        base,
        matches!(status, ReductionStatus::UnreducedC(_)),
        status,
    )?;
    let chain = c_chain(d, base);
    let (a, b, c) = (chain[0], chain[1], chain[2]);
    let new = fresh(d, &[], format!("{0}{1}{0}", d.name(a), d.name(b)));
    let z = fresh(d, std::slice::from_ref(&new), "z".into());
    Ok(rewrite(d, base.members.members(), a, new, z, |t| {
        let to_new = if t == c { 3 } else { 2 };
        (Some(to_new), 2)
    }))
}

/// Rewrites an unreduced `D2(4q+2)` base `{a, b}` into `D2(2q+1)` plus a
/// commuting generator, where `a` is the least-named witness of the special
/// pair.
pub fn exchange_d(d: &PDiagram, base: &Base) -> Result<PDiagram, MatchingError> {
    let status = base_reduction_status(d, base)?;
    let ReductionStatus::UnreducedD(q) = status else {
        return require(d, base, false, status).map(|_| unreachable!());
    };
    let &[x, y] = base.members.members() else {
        unreachable!("dihedral bases have two members")
    };
    let a = special_witness(d, x, y).expect("unreduced pair is special");
    let b = if a == x { y } else { x };
    let new = fresh(d, &[], format!("{0}{1}{0}", d.name(a), d.name(b)));
    let z = fresh(d, std::slice::from_ref(&new), "z".into());
    Ok(rewrite(d, base.members.members(), a, new, z, |_| {
        (Some(2 * q + 1), 2)
    }))
}

/// Applies whichever exchange the base's status calls for.
pub fn exchange(d: &PDiagram, base: &Base) -> Result<PDiagram, MatchingError> {
    match base_reduction_status(d, base)? {
        ReductionStatus::UnreducedC(_) => exchange_c(d, base),
        ReductionStatus::UnreducedD(_) => exchange_d(d, base),
        status @ ReductionStatus::Reduced => Err(MatchingError::WrongStatus {
            members: names(d, base),
            status,
        }),
    }
}
