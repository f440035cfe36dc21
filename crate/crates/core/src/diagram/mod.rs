//! Presentation diagrams of finite-rank Coxeter systems.
//!
//! A [`PDiagram`] stores a Coxeter matrix as a labeled graph: one edge per
//! pair with a finite label, and no edge where the label is infinite. The
//! Coxeter-diagram view (edges where the label exceeds 2, including
//! infinity) is never stored; it is computed on demand by
//! [`PDiagram::c_components`] and the classification code.

mod io;

pub use io::{emit_diagram, parse_diagram, parse_json, read_diagram, DiagramFormat, ParseError};

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::hash::{Hash, Hasher};

use num_integer::Integer;
use thiserror::Error;

use crate::unionfind::UnionFind;

/// Entry `m(s,t)` of a Coxeter matrix for distinct generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    /// A finite label, always at least 2.
    Finite(u32),
    Infinity,
}

impl Label {
    pub fn finite(self) -> Option<u32> {
        match self {
            Label::Finite(m) => Some(m),
            Label::Infinity => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Label::Finite(_))
    }

    /// Greatest common divisor with infinity acting as the identity.
    pub fn gcd(self, other: Label) -> Label {
        match (self, other) {
            (Label::Finite(a), Label::Finite(b)) => Label::Finite(a.gcd(&b)),
            (Label::Finite(a), Label::Infinity) | (Label::Infinity, Label::Finite(a)) => {
                Label::Finite(a)
            }
            (Label::Infinity, Label::Infinity) => Label::Infinity,
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Finite(m) => write!(f, "{m}"),
            Label::Infinity => f.write_str("inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("invalid generator name `{0}`")]
    InvalidName(String),
    #[error("self-pair on generator `{0}`")]
    SelfPair(String),
    #[error("duplicate edge `{0}`-`{1}`")]
    DuplicateEdge(String, String),
    #[error("label {label} on `{a}`-`{b}` is below 2")]
    LabelTooSmall { a: String, b: String, label: u32 },
}

/// A subset of the generators of some diagram, held as sorted indices.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GeneratorSubset(Vec<usize>);

impl GeneratorSubset {
    pub fn from_indices(indices: impl IntoIterator<Item = usize>) -> Self {
        let mut v: Vec<usize> = indices.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        GeneratorSubset(v)
    }

    pub fn empty() -> Self {
        GeneratorSubset(Vec::new())
    }

    pub fn members(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, index: usize) -> bool {
        self.0.binary_search(&index).is_ok()
    }

    pub fn is_subset_of(&self, other: &GeneratorSubset) -> bool {
        self.0.iter().all(|&i| other.contains(i))
    }

    pub fn names<'d>(&self, d: &'d PDiagram) -> Vec<&'d str> {
        self.0.iter().map(|&i| d.name(i)).collect()
    }
}

/// Disjoint blocks covering a generator subset; blocks are ordered by
/// their smallest member.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Partition {
    blocks: Vec<GeneratorSubset>,
}

impl Partition {
    fn from_union_find(members: &[usize], uf: &mut UnionFind) -> Self {
        let mut by_root: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for &m in members {
            by_root.entry(uf.find(m)).or_default().push(m);
        }
        let mut blocks: Vec<GeneratorSubset> = by_root
            .into_values()
            .map(GeneratorSubset::from_indices)
            .collect();
        blocks.sort_by_key(|b| b.members()[0]);
        Partition { blocks }
    }

    pub fn blocks(&self) -> &[GeneratorSubset] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Index of the block holding generator `index`, if covered.
    pub fn block_of(&self, index: usize) -> Option<usize> {
        self.blocks.iter().position(|b| b.contains(index))
    }

    /// Blocks rendered as generator names, for display and tests.
    pub fn names<'d>(&self, d: &'d PDiagram) -> Vec<Vec<&'d str>> {
        self.blocks.iter().map(|b| b.names(d)).collect()
    }
}

/// A Coxeter system given by its presentation diagram.
///
/// Generators keep their declaration order; labels are stored only for
/// pairs with a finite entry.
#[derive(Debug, Clone)]
pub struct PDiagram {
    names: Vec<String>,
    index: HashMap<String, usize>,
    edges: BTreeMap<(usize, usize), u32>,
}

impl PartialEq for PDiagram {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.edges == other.edges
    }
}

impl Eq for PDiagram {}

impl Hash for PDiagram {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.names.hash(state);
        self.edges.hash(state);
    }
}

fn ordered(i: usize, j: usize) -> (usize, usize) {
    if i < j {
        (i, j)
    } else {
        (j, i)
    }
}

pub(crate) fn valid_name(name: &str) -> bool {
    !name.is_empty()
        && !name
            .chars()
            .any(|c| c.is_whitespace() || c == '#' || c == '"')
}

impl PDiagram {
    /// The rank-0 diagram of the trivial group.
    pub fn empty() -> Self {
        PDiagram {
            names: Vec::new(),
            index: HashMap::new(),
            edges: BTreeMap::new(),
        }
    }

    /// A diagram with the given generators and no finite labels (a free
    /// product of copies of `A1`).
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self, DiagramError> {
        let mut d = PDiagram::empty();
        for name in names {
            let name = name.into();
            if !valid_name(&name) {
                return Err(DiagramError::InvalidName(name));
            }
            if d.index.contains_key(&name) {
                return Err(DiagramError::DuplicateGenerator(name));
            }
            d.index.insert(name.clone(), d.names.len());
            d.names.push(name);
        }
        Ok(d)
    }

    /// Builds a diagram from generator names and `(a, b, m)` edges.
    pub fn from_edges<S: Into<String>>(
        names: impl IntoIterator<Item = S>,
        edges: &[(&str, &str, u32)],
    ) -> Result<Self, DiagramError> {
        let mut d = PDiagram::new(names)?;
        for &(a, b, m) in edges {
            d.add_edge(a, b, m)?;
        }
        Ok(d)
    }

    /// Adds a finite edge; each unordered pair may be given once.
    pub fn add_edge(&mut self, a: &str, b: &str, label: u32) -> Result<(), DiagramError> {
        let i = self.index_of(a)?;
        let j = self.index_of(b)?;
        if i == j {
            return Err(DiagramError::SelfPair(a.to_string()));
        }
        if label < 2 {
            return Err(DiagramError::LabelTooSmall {
                a: a.to_string(),
                b: b.to_string(),
                label,
            });
        }
        if self.edges.insert(ordered(i, j), label).is_some() {
            return Err(DiagramError::DuplicateEdge(a.to_string(), b.to_string()));
        }
        Ok(())
    }

    /// Assembles a diagram from already validated parts.
    pub(crate) fn from_parts(names: Vec<String>, edges: BTreeMap<(usize, usize), u32>) -> Self {
        let index = names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.clone(), i))
            .collect();
        debug_assert!(edges
            .iter()
            .all(|(&(i, j), &m)| i < j && j < names.len() && m >= 2));
        PDiagram {
            names,
            index,
            edges,
        }
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, index: usize) -> &str {
        &self.names[index]
    }

    pub fn index_of(&self, name: &str) -> Result<usize, DiagramError> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| DiagramError::UnknownGenerator(name.to_string()))
    }

    /// `m(s,t)` for distinct generator indices.
    pub fn label(&self, i: usize, j: usize) -> Label {
        assert_ne!(i, j, "m(s,s) = 1 is not an edge label");
        match self.edges.get(&ordered(i, j)) {
            Some(&m) => Label::Finite(m),
            None => Label::Infinity,
        }
    }

    pub fn label_by_name(&self, a: &str, b: &str) -> Result<Label, DiagramError> {
        let i = self.index_of(a)?;
        let j = self.index_of(b)?;
        if i == j {
            return Err(DiagramError::SelfPair(a.to_string()));
        }
        Ok(self.label(i, j))
    }

    /// Finite edges as `(i, j, m)` with `i < j`, in index order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, u32)> + '_ {
        self.edges.iter().map(|(&(i, j), &m)| (i, j, m))
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Generators sharing a finite label with `i`.
    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.edges.iter().filter_map(move |(&(a, b), &m)| {
            if a == i {
                Some((b, m))
            } else if b == i {
                Some((a, m))
            } else {
                None
            }
        })
    }

    pub fn all_generators(&self) -> GeneratorSubset {
        GeneratorSubset((0..self.rank()).collect())
    }

    /// Resolves generator names into a subset, rejecting unknown names.
    pub fn subset<S: AsRef<str>>(&self, names: &[S]) -> Result<GeneratorSubset, DiagramError> {
        names
            .iter()
            .map(|n| self.index_of(n.as_ref()))
            .collect::<Result<Vec<_>, _>>()
            .map(GeneratorSubset::from_indices)
    }

    /// The diagram of the visual subgroup generated by `subset`; generators
    /// keep their relative order.
    pub fn induced_subdiagram(&self, subset: &GeneratorSubset) -> PDiagram {
        let members = subset.members();
        assert!(
            members.iter().all(|&i| i < self.rank()),
            "subset out of range"
        );
        let names = members.iter().map(|&i| self.names[i].clone()).collect();
        let mut edges = BTreeMap::new();
        for (a, &i) in members.iter().enumerate() {
            for (b, &j) in members.iter().enumerate().skip(a + 1) {
                if let Some(&m) = self.edges.get(&ordered(i, j)) {
                    edges.insert((a, b), m);
                }
            }
        }
        PDiagram::from_parts(names, edges)
    }

    fn components_by(&self, members: &[usize], joined: impl Fn(Label) -> bool) -> Partition {
        let mut uf = UnionFind::new(self.rank());
        for (a, &i) in members.iter().enumerate() {
            for &j in &members[a + 1..] {
                if joined(self.label(i, j)) {
                    uf.union(i, j);
                }
            }
        }
        Partition::from_union_find(members, &mut uf)
    }

    /// Connected components of the P-diagram: the free factors of `W`.
    pub fn free_factors(&self) -> Partition {
        self.components_by(self.all_generators().members(), Label::is_finite)
    }

    /// Components of the Coxeter diagram on `subset`, where a pair is
    /// joined when its label exceeds 2 or is infinite. These are the
    /// direct factors of the visual subgroup.
    pub fn c_components(&self, subset: &GeneratorSubset) -> Partition {
        self.components_by(subset.members(), |l| l != Label::Finite(2))
    }

    /// Whether `subset` spans a single Coxeter-diagram component.
    pub fn is_irreducible(&self, subset: &GeneratorSubset) -> bool {
        self.c_components(subset).len() == 1
    }

    /// Components under odd-labeled edges. Two generators are conjugate in
    /// `W` exactly when they share a block.
    pub fn odd_components(&self) -> Partition {
        self.components_by(
            self.all_generators().members(),
            |l| matches!(l, Label::Finite(m) if m % 2 == 1),
        )
    }
}

impl fmt::Display for PDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&emit_diagram(self, DiagramFormat::Text))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn square() -> PDiagram {
        parse_diagram("gen r1 r2 r3 r4\nedge r1 r2 2\nedge r2 r3 2\nedge r3 r4 2\nedge r4 r1 2")
            .unwrap()
    }

    #[test]
    fn gcd_treats_infinity_as_identity() {
        use Label::*;
        assert_eq!(Finite(4).gcd(Finite(6)), Finite(2));
        assert_eq!(Finite(4).gcd(Infinity), Finite(4));
        assert_eq!(Infinity.gcd(Finite(9)), Finite(9));
        assert_eq!(Infinity.gcd(Infinity), Infinity);
        assert!(Finite(1000) < Infinity);
    }

    #[test]
    fn induced_subdiagram_restricts_edges() {
        let sq = square();
        let adjacent = sq.induced_subdiagram(&sq.subset(&["r1", "r2"]).unwrap());
        assert_eq!(adjacent.rank(), 2);
        assert_eq!(adjacent.edges().collect::<Vec<_>>(), vec![(0, 1, 2)]);

        let opposite = sq.induced_subdiagram(&sq.subset(&["r1", "r3"]).unwrap());
        assert_eq!(opposite.rank(), 2);
        assert_eq!(opposite.edge_count(), 0);
        assert_eq!(opposite.label(0, 1), Label::Infinity);

        let empty = sq.induced_subdiagram(&GeneratorSubset::empty());
        assert_eq!(empty, PDiagram::empty());
        assert_eq!(sq.induced_subdiagram(&sq.all_generators()), sq);
    }

    #[test]
    fn unknown_generator_in_subset() {
        assert_eq!(
            square().subset(&["r1", "x"]),
            Err(DiagramError::UnknownGenerator("x".into()))
        );
    }

    #[test]
    fn free_factors_follow_finite_edges() {
        assert_eq!(square().free_factors().len(), 1);
        let two =
            PDiagram::from_edges(["a", "b", "c", "d"], &[("a", "b", 3), ("c", "d", 3)]).unwrap();
        assert_eq!(
            two.free_factors().names(&two),
            vec![vec!["a", "b"], vec!["c", "d"]]
        );
        assert!(PDiagram::empty().free_factors().is_empty());
    }

    #[test]
    fn c_components_of_rectangle_group() {
        let sq = square();
        let parts = sq.c_components(&sq.all_generators());
        assert_eq!(parts.names(&sq), vec![vec!["r1", "r3"], vec!["r2", "r4"]]);

        let a2 = PDiagram::from_edges(["a", "b"], &[("a", "b", 3)]).unwrap();
        assert!(a2.is_irreducible(&a2.all_generators()));
        let a1a1 = PDiagram::from_edges(["a", "b"], &[("a", "b", 2)]).unwrap();
        assert_eq!(a1a1.c_components(&a1a1.all_generators()).len(), 2);
    }

    #[test]
    fn odd_components_small_cases() {
        let g2 = PDiagram::from_edges(["a", "b"], &[("a", "b", 6)]).unwrap();
        assert_eq!(g2.odd_components().len(), 2);
        let a2 = PDiagram::from_edges(["a", "b"], &[("a", "b", 3)]).unwrap();
        assert_eq!(a2.odd_components().names(&a2), vec![vec!["a", "b"]]);
    }

    #[test]
    fn odd_components_of_fig1_left() {
        let d = crate::fixtures::fixture("fig1_left").unwrap();
        let mut blocks = d.odd_components().names(&d);
        for b in &mut blocks {
            b.sort_unstable();
        }
        assert_eq!(
            blocks,
            vec![
                vec!["A"],
                vec!["B", "C", "E"],
                vec!["D", "F"],
                vec!["G", "H"]
            ]
        );
    }

    #[test]
    fn add_edge_rejects_invalid_pairs() {
        let mut d = PDiagram::new(["a", "b"]).unwrap();
        assert_eq!(
            d.add_edge("a", "a", 3),
            Err(DiagramError::SelfPair("a".into()))
        );
        assert!(matches!(
            d.add_edge("a", "b", 1),
            Err(DiagramError::LabelTooSmall { .. })
        ));
        d.add_edge("a", "b", 3).unwrap();
        assert!(matches!(
            d.add_edge("b", "a", 4),
            Err(DiagramError::DuplicateEdge(..))
        ));
        assert!(matches!(
            PDiagram::new(["a", "a"]),
            Err(DiagramError::DuplicateGenerator(_))
        ));
    }
}
