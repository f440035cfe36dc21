//! Labeled-graph isomorphism of presentation diagrams through canonical
//! forms.
//!
//! Vertices are colored by iterated refinement on (color, multiset of
//! incident (label, neighbor color)). When refinement stalls the search
//! individualizes each vertex of the first non-singleton cell in turn,
//! skipping vertices already covered by the orbits of automorphisms found
//! so far, and keeps the least edge encoding over all leaves.

use std::fmt;

use crate::diagram::PDiagram;
use crate::unionfind::UnionFind;

const KEY_VERSION: u8 = 1;

/// Isomorphism-invariant key of a diagram: equal keys iff isomorphic.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalKey {
    version: u8,
    rank: usize,
    edges: Vec<(usize, usize, u32)>,
}

impl CanonicalKey {
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Edges `(i, j, m)` with `i < j` over canonical positions, sorted.
    pub fn edges(&self) -> &[(usize, usize, u32)] {
        &self.edges
    }
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}:{}", self.version, self.rank)?;
        for (i, j, m) in &self.edges {
            write!(f, ":{i}-{j}-{m}")?;
        }
        Ok(())
    }
}

type Adjacency = Vec<Vec<(usize, u32)>>;

fn rank_by<K: Ord + Clone>(keys: &[K]) -> Vec<usize> {
    let mut sorted: Vec<K> = keys.to_vec();
    sorted.sort();
    sorted.dedup();
    keys.iter()
        .map(|k| sorted.binary_search(k).expect("key present"))
        .collect()
}

fn cell_count(color: &[usize]) -> usize {
    color.iter().max().map_or(0, |&m| m + 1)
}

fn refine(adj: &Adjacency, mut color: Vec<usize>) -> Vec<usize> {
    loop {
        let before = cell_count(&color);
        let keys: Vec<(usize, Vec<(u32, usize)>)> = (0..adj.len())
            .map(|v| {
                let mut around: Vec<(u32, usize)> =
                    adj[v].iter().map(|&(u, m)| (m, color[u])).collect();
                around.sort_unstable();
                (color[v], around)
            })
            .collect();
        let next = rank_by(&keys);
        if cell_count(&next) == before {
            return next;
        }
        color = next;
    }
}

fn individualize(adj: &Adjacency, color: &[usize], v: usize) -> Vec<usize> {
    let keys: Vec<(usize, bool)> = (0..color.len()).map(|u| (color[u], u != v)).collect();
    refine(adj, rank_by(&keys))
}

fn encode(adj: &Adjacency, pos: &[usize]) -> Vec<(usize, usize, u32)> {
    let mut out: Vec<(usize, usize, u32)> = adj
        .iter()
        .enumerate()
        .flat_map(|(v, nbrs)| {
            nbrs.iter()
                .filter(move |&&(u, _)| v < u)
                .map(move |&(u, m)| (pos[v].min(pos[u]), pos[v].max(pos[u]), m))
        })
        .collect();
    out.sort_unstable();
    out
}

struct Search<'a> {
    adj: &'a Adjacency,
    best: Option<(Vec<(usize, usize, u32)>, Vec<usize>)>,
    automorphisms: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn leaf(&mut self, pos: Vec<usize>) {
        let code = encode(self.adj, &pos);
        match &self.best {
            Some((best, _)) if code > *best => {}
            Some((best, best_pos)) if code == *best => {
                let mut inverse = vec![0; pos.len()];
                for (v, &p) in best_pos.iter().enumerate() {
                    inverse[p] = v;
                }
                let auto: Vec<usize> = pos.iter().map(|&p| inverse[p]).collect();
                if auto.iter().enumerate().any(|(v, &w)| v != w) {
                    self.automorphisms.push(auto);
                }
            }
            _ => self.best = Some((code, pos)),
        }
    }

    fn covered(&self, prefix: &[usize], tried: &[usize], v: usize) -> bool {
        let mut orbits = UnionFind::new(self.adj.len());
        for auto in &self.automorphisms {
            if prefix.iter().all(|&p| auto[p] == p) {
                for (a, &b) in auto.iter().enumerate() {
                    orbits.union(a, b);
                }
            }
        }
        tried.iter().any(|&t| orbits.same(t, v))
    }

    fn visit(&mut self, color: Vec<usize>, prefix: &mut Vec<usize>) {
        let n = color.len();
        if cell_count(&color) == n {
            self.leaf(color);
            return;
        }
        let mut sizes = vec![0usize; cell_count(&color)];
        for &c in &color {
            sizes[c] += 1;
        }
        let target = sizes
            .iter()
            .position(|&s| s > 1)
            .expect("non-discrete coloring");
        let cell: Vec<usize> = (0..n).filter(|&v| color[v] == target).collect();
        let mut tried = Vec::new();
        for v in cell {
            if !tried.is_empty() && self.covered(prefix, &tried, v) {
                continue;
            }
            tried.push(v);
            prefix.push(v);
            let next = individualize(self.adj, &color, v);
            self.visit(next, prefix);
            prefix.pop();
        }
    }
}

/// The canonical key of `d` and the canonical position of each generator.
pub fn canonical_form(d: &PDiagram) -> (CanonicalKey, Vec<usize>) {
    let n = d.rank();
    let adj: Adjacency = (0..n).map(|v| d.neighbors(v).collect()).collect();
    let mut search = Search {
        adj: &adj,
        best: None,
        automorphisms: Vec::new(),
    };
    search.visit(refine(&adj, vec![0; n]), &mut Vec::new());
    let (edges, pos) = search.best.expect("search reaches a leaf");
    (
        CanonicalKey {
            version: KEY_VERSION,
            rank: n,
            edges,
        },
        pos,
    )
}

pub fn canonical_key(d: &PDiagram) -> CanonicalKey {
    canonical_form(d).0
}

/// A label-preserving bijection from the generators of `a` to those of
/// `b`, if one exists. `map[i]` is the index in `b` of generator `i` of
/// `a`.
pub fn isomorphic(a: &PDiagram, b: &PDiagram) -> Option<Vec<usize>> {
    if a.rank() != b.rank() || a.edge_count() != b.edge_count() {
        return None;
    }
    let (ka, pa) = canonical_form(a);
    let (kb, pb) = canonical_form(b);
    if ka != kb {
        return None;
    }
    let mut from_b = vec![0; pb.len()];
    for (v, &p) in pb.iter().enumerate() {
        from_b[p] = v;
    }
    Some(pa.iter().map(|&p| from_b[p]).collect())
}
