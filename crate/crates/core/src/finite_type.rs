//! Finite irreducible Coxeter types, recognized from diagrams.
//!
//! Types use Coxeter's names: `A(n)` is the linear all-3 diagram, `B(n)`
//! the Y-shaped all-3 diagram with two single-edge arms, `C(n)` the linear
//! diagram ending in a 4, `D2(k)` the rank-2 dihedral type, and the
//! exceptional `E6`, `E7`, `E8`, `F4`, `G3`, `G4`. The aliases `B(3) = A(3)`,
//! `D2(3) = A(2)` and `D2(4) = C(2)` are resolved on construction, so type
//! equality is plain value equality.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use thiserror::Error;

use crate::diagram::{GeneratorSubset, Label, PDiagram};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TypeError {
    #[error("generator subset {0:?} is not irreducible")]
    NotIrreducible(Vec<String>),
    #[error("invalid finite type `{0}`")]
    Invalid(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FiniteType {
    A(u32),
    B(u32),
    C(u32),
    D2(u32),
    E6,
    E7,
    E8,
    F4,
    G3,
    G4,
}

impl FiniteType {
    pub fn a(n: u32) -> Result<Self, TypeError> {
        if n == 0 {
            return Err(TypeError::Invalid(format!("A{n}")));
        }
        Ok(FiniteType::A(n))
    }

    pub fn b(n: u32) -> Result<Self, TypeError> {
        match n {
            0..=2 => Err(TypeError::Invalid(format!("B{n}"))),
            3 => Ok(FiniteType::A(3)),
            _ => Ok(FiniteType::B(n)),
        }
    }

    pub fn c(n: u32) -> Result<Self, TypeError> {
        if n < 2 {
            return Err(TypeError::Invalid(format!("C{n}")));
        }
        Ok(FiniteType::C(n))
    }

    pub fn d2(k: u32) -> Result<Self, TypeError> {
        match k {
            0..=2 => Err(TypeError::Invalid(format!("D2({k})"))),
            3 => Ok(FiniteType::A(2)),
            4 => Ok(FiniteType::C(2)),
            _ => Ok(FiniteType::D2(k)),
        }
    }

    /// Re-applies the alias table, for values built from raw variants.
    pub fn normalized(self) -> Result<Self, TypeError> {
        match self {
            FiniteType::A(n) => FiniteType::a(n),
            FiniteType::B(n) => FiniteType::b(n),
            FiniteType::C(n) => FiniteType::c(n),
            FiniteType::D2(k) => FiniteType::d2(k),
            other => Ok(other),
        }
    }

    pub fn rank(self) -> u32 {
        match self {
            FiniteType::A(n) | FiniteType::B(n) | FiniteType::C(n) => n,
            FiniteType::D2(_) => 2,
            FiniteType::E6 => 6,
            FiniteType::E7 => 7,
            FiniteType::E8 => 8,
            FiniteType::F4 | FiniteType::G4 => 4,
            FiniteType::G3 => 3,
        }
    }
}

impl fmt::Display for FiniteType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FiniteType::A(n) => write!(f, "A{n}"),
            FiniteType::B(n) => write!(f, "B{n}"),
            FiniteType::C(n) => write!(f, "C{n}"),
            FiniteType::D2(k) => write!(f, "D2({k})"),
            FiniteType::E6 => f.write_str("E6"),
            FiniteType::E7 => f.write_str("E7"),
            FiniteType::E8 => f.write_str("E8"),
            FiniteType::F4 => f.write_str("F4"),
            FiniteType::G3 => f.write_str("G3"),
            FiniteType::G4 => f.write_str("G4"),
        }
    }
}

impl FromStr for FiniteType {
    type Err = TypeError;

    /// Accepts `A3`, `A(3)`, `D2(6)` and the exceptional names, in either
    /// case.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let invalid = || TypeError::Invalid(s.to_string());
        let t = s.trim().to_ascii_uppercase();
        match t.as_str() {
            "E6" => return Ok(FiniteType::E6),
            "E7" => return Ok(FiniteType::E7),
            "E8" => return Ok(FiniteType::E8),
            "F4" => return Ok(FiniteType::F4),
            "G3" => return Ok(FiniteType::G3),
            "G4" => return Ok(FiniteType::G4),
            _ => {}
        }
        let number = |rest: &str| -> Result<u32, TypeError> {
            let rest = rest
                .strip_prefix('(')
                .and_then(|r| r.strip_suffix(')'))
                .unwrap_or(rest);
            rest.parse().map_err(|_| invalid())
        };
        if let Some(rest) = t.strip_prefix("D2") {
            return FiniteType::d2(number(rest)?).map_err(|_| invalid());
        }
        let (head, rest) = t.split_at(t.chars().next().map_or(0, char::len_utf8));
        let n = number(rest)?;
        match head {
            "A" => FiniteType::a(n),
            "B" => FiniteType::b(n),
            "C" => FiniteType::c(n),
            _ => Err(invalid()),
        }
        .map_err(|_| invalid())
    }
}

/// How the members of a finite irreducible subset sit in its Coxeter
/// diagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Layout {
    /// A linear diagram listed end to end. For `C(n)`, `G3` and `G4` the
    /// distinguished edge (4 or 5) is the last one; otherwise the end with
    /// the smaller index comes first.
    Path(Vec<usize>),
    /// A star with all labels 3; arms run outward from the center and are
    /// sorted by length.
    Star {
        center: usize,
        arms: Vec<Vec<usize>>,
    },
}

fn path_type(labels: &[u32]) -> Option<(FiniteType, bool)> {
    // Returns the type and whether the path must be reversed so that the
    // distinguished edge comes last.
    let n = labels.len() as u32 + 1;
    if n == 2 {
        return FiniteType::d2(labels[0]).ok().map(|t| (t, false));
    }
    let odd_ones: Vec<usize> = (0..labels.len()).filter(|&i| labels[i] != 3).collect();
    match odd_ones.as_slice() {
        [] => Some((FiniteType::A(n), false)),
        &[i] => {
            let last = labels.len() - 1;
            let at_end = i == 0 || i == last;
            match labels[i] {
                4 if at_end => Some((FiniteType::C(n), i == 0)),
                4 if n == 4 && i == 1 => Some((FiniteType::F4, false)),
                5 if at_end && n == 3 => Some((FiniteType::G3, i == 0)),
                5 if at_end && n == 4 => Some((FiniteType::G4, i == 0)),
                _ => None,
            }
        }
        _ => None,
    }
}

/// Recognizes the finite type of an irreducible member list, with its
/// layout. Returns `None` for infinite (or unrecognized) diagrams.
pub(crate) fn recognize(d: &PDiagram, members: &[usize]) -> Option<(FiniteType, Layout)> {
    let n = members.len();
    if n == 0 {
        return None;
    }
    if n == 1 {
        return Some((FiniteType::A(1), Layout::Path(members.to_vec())));
    }
    let mut adj: Vec<Vec<(usize, u32)>> = vec![Vec::new(); n];
    let mut edge_count = 0;
    for a in 0..n {
        for b in a + 1..n {
            match d.label(members[a], members[b]) {
                Label::Infinity => return None,
                Label::Finite(2) => {}
                Label::Finite(m) => {
                    adj[a].push((b, m));
                    adj[b].push((a, m));
                    edge_count += 1;
                }
            }
        }
    }
    if edge_count != n - 1 {
        return None;
    }
    // Connectivity check: a tree has n-1 edges and is connected.
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &(w, _) in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    if seen.iter().any(|s| !s) {
        return None;
    }

    let branch: Vec<usize> = (0..n).filter(|&v| adj[v].len() >= 3).collect();
    match branch.as_slice() {
        [] => {
            // Path: walk from the end with the smaller generator index.
            let ends: Vec<usize> = (0..n).filter(|&v| adj[v].len() == 1).collect();
            let start = *ends.iter().min_by_key(|&&v| members[v])?;
            let mut order = vec![start];
            let mut labels = Vec::with_capacity(n - 1);
            let mut prev = usize::MAX;
            let mut cur = start;
            while let Some(&(next, m)) = adj[cur].iter().find(|&&(w, _)| w != prev) {
                labels.push(m);
                order.push(next);
                prev = cur;
                cur = next;
            }
            let (t, reverse) = path_type(&labels)?;
            let mut path: Vec<usize> = order.iter().map(|&v| members[v]).collect();
            if reverse {
                path.reverse();
            }
            Some((t, Layout::Path(path)))
        }
        &[center] => {
            if adj[center].len() != 3 || adj.iter().flatten().any(|&(_, m)| m != 3) {
                return None;
            }
            let mut arms: Vec<Vec<usize>> = adj[center]
                .iter()
                .map(|&(first, _)| {
                    let mut arm = vec![first];
                    let (mut prev, mut cur) = (center, first);
                    while let Some(&(next, _)) = adj[cur].iter().find(|&&(w, _)| w != prev) {
                        arm.push(next);
                        prev = cur;
                        cur = next;
                    }
                    arm
                })
                .collect();
            arms.sort_by_key(|arm| (arm.len(), members[arm[0]]));
            let lengths: Vec<usize> = arms.iter().map(Vec::len).collect();
            let t = match lengths.as_slice() {
                [1, 1, c] => FiniteType::b(3 + *c as u32).ok()?,
                [1, 2, 2] => FiniteType::E6,
                [1, 2, 3] => FiniteType::E7,
                [1, 2, 4] => FiniteType::E8,
                _ => return None,
            };
            let arms = arms
                .into_iter()
                .map(|arm| arm.into_iter().map(|v| members[v]).collect())
                .collect();
            Some((
                t,
                Layout::Star {
                    center: members[center],
                    arms,
                },
            ))
        }
        _ => None,
    }
}

/// The finite type of an irreducible subset, or `None` when its visual
/// subgroup is infinite.
pub fn classify_irreducible(
    d: &PDiagram,
    subset: &GeneratorSubset,
) -> Result<Option<FiniteType>, TypeError> {
    if !d.is_irreducible(subset) {
        return Err(TypeError::NotIrreducible(
            subset.names(d).into_iter().map(String::from).collect(),
        ));
    }
    Ok(recognize(d, subset.members()).map(|(t, _)| t))
}

/// Whether the visual subgroup on `subset` is finite: every Coxeter-diagram
/// component must have a finite type.
pub fn is_finite_subset(d: &PDiagram, subset: &GeneratorSubset) -> bool {
    d.c_components(subset)
        .blocks()
        .iter()
        .all(|b| recognize(d, b.members()).is_some())
}

/// Types of the Coxeter-diagram components of `subset`, `None` for an
/// infinite component.
pub fn component_types(
    d: &PDiagram,
    subset: &GeneratorSubset,
) -> Vec<(GeneratorSubset, Option<FiniteType>)> {
    d.c_components(subset)
        .blocks()
        .iter()
        .map(|b| (b.clone(), recognize(d, b.members()).map(|(t, _)| t)))
        .collect()
}

/// A noncyclic, maximal, finite, irreducible generator subset.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Base {
    pub members: GeneratorSubset,
    pub kind: FiniteType,
}

impl Base {
    pub fn rank(&self) -> usize {
        self.members.len()
    }

    pub(crate) fn layout(&self, d: &PDiagram) -> Layout {
        recognize(d, self.members.members())
            .expect("base is finite")
            .1
    }

    fn sort_key(&self, d: &PDiagram) -> Vec<String> {
        let mut names: Vec<String> = self
            .members
            .names(d)
            .into_iter()
            .map(String::from)
            .collect();
        names.sort();
        names
    }
}

/// Checks whether `subset` is a base and returns it with its type.
pub fn base_of(d: &PDiagram, subset: &GeneratorSubset) -> Option<Base> {
    if subset.len() < 2 || !d.is_irreducible(subset) {
        return None;
    }
    let (kind, _) = recognize(d, subset.members())?;
    let grows = (0..d.rank()).filter(|&v| !subset.contains(v)).any(|v| {
        let bigger = GeneratorSubset::from_indices(subset.members().iter().copied().chain([v]));
        d.is_irreducible(&bigger) && recognize(d, bigger.members()).is_some()
    });
    (!grows).then(|| Base {
        members: subset.clone(),
        kind,
    })
}

/// All bases of `d`, sorted by their (sorted) member names.
///
/// Candidates grow one Coxeter-diagram neighbor at a time from single
/// edges with finite label above 2; a candidate whose type is not
/// recognized is dropped together with all its supersets, since
/// finiteness passes to visual subgroups.
pub fn enumerate_bases(d: &PDiagram) -> Vec<Base> {
    let n = d.rank();
    let c_edge = |i: usize, j: usize| matches!(d.label(i, j), Label::Finite(m) if m > 2);
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut stack: Vec<Vec<usize>> = Vec::new();
    for (i, j, m) in d.edges() {
        if m > 2 && recognize(d, &[i, j]).is_some() {
            let set = vec![i, j];
            if seen.insert(set.clone()) {
                stack.push(set);
            }
        }
    }
    let mut bases = Vec::new();
    while let Some(set) = stack.pop() {
        let mut maximal = true;
        for v in 0..n {
            if set.binary_search(&v).is_ok() || !set.iter().any(|&x| c_edge(x, v)) {
                continue;
            }
            if set.iter().any(|&x| !d.label(x, v).is_finite()) {
                continue;
            }
            let mut bigger = set.clone();
            bigger.insert(bigger.binary_search(&v).unwrap_err(), v);
            if recognize(d, &bigger).is_some() {
                maximal = false;
                if seen.insert(bigger.clone()) {
                    stack.push(bigger);
                }
            }
        }
        if maximal {
            let (kind, _) = recognize(d, &set).expect("candidate is finite");
            bases.push(Base {
                members: GeneratorSubset::from_indices(set),
                kind,
            });
        }
    }
    bases.sort_by_cached_key(|b| b.sort_key(d));
    bases
}

fn factorial(n: u32) -> BigUint {
    (1..=n).fold(BigUint::from(1u32), |acc, k| acc * k)
}

/// Order of the finite Coxeter group of type `t`.
pub fn coxeter_order(t: FiniteType) -> BigUint {
    let two = BigUint::from(2u32);
    match t {
        FiniteType::A(n) => factorial(n + 1),
        FiniteType::B(n) => two.pow(n - 1) * factorial(n),
        FiniteType::C(n) => two.pow(n) * factorial(n),
        FiniteType::D2(k) => BigUint::from(2 * u64::from(k)),
        FiniteType::E6 => BigUint::from(51_840u32),
        FiniteType::E7 => BigUint::from(2_903_040u32),
        FiniteType::E8 => BigUint::from(696_729_600u32),
        FiniteType::F4 => BigUint::from(1_152u32),
        FiniteType::G3 => BigUint::from(120u32),
        FiniteType::G4 => BigUint::from(14_400u32),
    }
}
