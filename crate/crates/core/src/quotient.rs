//! Quotients of Coxeter systems by power relators `(st)^d`.
//!
//! Adding `(st)^d` with `d > 1` dividing `m(s,t)` lowers that label to `d`.
//! Adding `st` identifies `s` with `t`; every other generator `r` then sees
//! the merged class through both old labels, which coalesce to their gcd,
//! and a gcd of 1 identifies `r` as well. [`quotient_by_power_relators`]
//! runs this to a fixpoint over a union-find on the generators, keeping one
//! gcd per pair of classes with infinity as the gcd identity. The result
//! does not depend on the order in which relators or merges are processed.

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

use crate::diagram::{Label, PDiagram};
use crate::unionfind::UnionFind;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuotientError {
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("generator index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("relator on `{0}` pairs a generator with itself")]
    SelfPair(String),
    #[error("relator exponent must be positive")]
    ZeroExponent,
    #[error("`{s}`-`{t}` has infinite label")]
    InfiniteLabel { s: String, t: String },
    #[error("{exponent} does not divide the label {label} of `{s}`-`{t}`")]
    NotDivisor {
        s: String,
        t: String,
        label: u32,
        exponent: u32,
    },
    #[error("{exponent} is not a proper divisor above 1 of the label {label} of `{s}`-`{t}`")]
    NotProperDivisor {
        s: String,
        t: String,
        label: u32,
        exponent: u32,
    },
}

/// The relator `(st)^exponent`, on generator indices of some diagram.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PowerRelator {
    pub s: usize,
    pub t: usize,
    pub exponent: u32,
}

impl PowerRelator {
    pub fn new(s: usize, t: usize, exponent: u32) -> Self {
        PowerRelator { s, t, exponent }
    }

    pub fn by_name(d: &PDiagram, s: &str, t: &str, exponent: u32) -> Result<Self, QuotientError> {
        let index = |n: &str| {
            d.index_of(n)
                .map_err(|_| QuotientError::UnknownGenerator(n.into()))
        };
        Ok(PowerRelator::new(index(s)?, index(t)?, exponent))
    }
}

/// One rewrite applied by the engine.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Step {
    /// A relator with exponent above 1 lowered a label.
    Reduce {
        s: String,
        t: String,
        from: u32,
        to: u32,
    },
    /// A relator `st` identified two classes.
    Identify { s: String, t: String },
    /// A coalesced label reached 1 and forced a further identification.
    Cascade { s: String, t: String },
    /// Two finite labels towards `other` merged into their gcd.
    Coalesce {
        class: String,
        other: String,
        left: u32,
        right: u32,
        gcd: u32,
    },
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Step::Reduce { s, t, from, to } => write!(f, "reduce {s}-{t}: {from} -> {to}"),
            Step::Identify { s, t } => write!(f, "identify {s} = {t}"),
            Step::Cascade { s, t } => write!(f, "cascade {s} = {t}"),
            Step::Coalesce {
                class,
                other,
                left,
                right,
                gcd,
            } => write!(f, "coalesce {class}-{other}: gcd({left}, {right}) = {gcd}"),
        }
    }
}

/// A quotient diagram with the map from old generators to new ones.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientOutcome {
    pub diagram: PDiagram,
    /// `class_map[i]` is the index, in `diagram`, of the class of old
    /// generator `i`.
    pub class_map: Vec<usize>,
    pub trace: Vec<Step>,
}

impl QuotientOutcome {
    pub fn identity(d: &PDiagram) -> Self {
        QuotientOutcome {
            diagram: d.clone(),
            class_map: (0..d.rank()).collect(),
            trace: Vec::new(),
        }
    }

    /// Name of the surviving generator that old generator `old` maps to.
    pub fn class_name(&self, old: usize) -> &str {
        self.diagram.name(self.class_map[old])
    }

    /// Follows this quotient by `next`, which must start from
    /// `self.diagram`.
    pub fn then(self, next: QuotientOutcome) -> QuotientOutcome {
        debug_assert_eq!(next.class_map.len(), self.diagram.rank());
        let class_map = self.class_map.iter().map(|&c| next.class_map[c]).collect();
        let mut trace = self.trace;
        trace.extend(next.trace);
        QuotientOutcome {
            diagram: next.diagram,
            class_map,
            trace,
        }
    }
}

/// Builds the quotient diagram for a generator partition.
///
/// `class[i]` is an arbitrary class id for generator `i` and `label` gives
/// the label between two distinct class ids. Each class survives as its
/// lexicographically least member name; classes keep the declaration order
/// of their survivors.
pub(crate) fn assemble(
    d: &PDiagram,
    class: &[usize],
    label: impl Fn(usize, usize) -> Label,
) -> (PDiagram, Vec<usize>) {
    let n = d.rank();
    let mut survivor: Vec<Option<usize>> =
        vec![None; class.iter().copied().max().map_or(0, |m| m + 1)];
    for i in 0..n {
        let slot = &mut survivor[class[i]];
        match *slot {
            Some(s) if d.name(s) <= d.name(i) => {}
            _ => *slot = Some(i),
        }
    }
    let mut survivors: Vec<(usize, usize)> = survivor
        .iter()
        .enumerate()
        .filter_map(|(c, s)| s.map(|s| (s, c)))
        .collect();
    survivors.sort_unstable();
    let mut new_index = vec![usize::MAX; survivor.len()];
    for (k, &(_, c)) in survivors.iter().enumerate() {
        new_index[c] = k;
    }
    let names: Vec<String> = survivors
        .iter()
        .map(|&(s, _)| d.name(s).to_string())
        .collect();
    let mut edges = std::collections::BTreeMap::new();
    for (a, &(_, ca)) in survivors.iter().enumerate() {
        for (b, &(_, cb)) in survivors.iter().enumerate().skip(a + 1) {
            if let Label::Finite(m) = label(ca, cb) {
                debug_assert!(m >= 2);
                edges.insert((a, b), m);
            }
        }
    }
    let class_map = (0..n).map(|i| new_index[class[i]]).collect();
    (PDiagram::from_parts(names, edges), class_map)
}

fn validate(d: &PDiagram, r: &PowerRelator) -> Result<(), QuotientError> {
    for &i in &[r.s, r.t] {
        if i >= d.rank() {
            return Err(QuotientError::IndexOutOfRange(i));
        }
    }
    if r.s == r.t {
        return Err(QuotientError::SelfPair(d.name(r.s).into()));
    }
    if r.exponent == 0 {
        return Err(QuotientError::ZeroExponent);
    }
    if r.exponent > 1 {
        let (s, t) = (d.name(r.s).to_string(), d.name(r.t).to_string());
        match d.label(r.s, r.t) {
            Label::Infinity => return Err(QuotientError::InfiniteLabel { s, t }),
            Label::Finite(m) if m % r.exponent != 0 => {
                return Err(QuotientError::NotDivisor {
                    s,
                    t,
                    label: m,
                    exponent: r.exponent,
                })
            }
            Label::Finite(_) => {}
        }
    }
    Ok(())
}

struct Engine<'d> {
    d: &'d PDiagram,
    uf: UnionFind,
    /// Dense gcd table indexed by class roots.
    value: Vec<Label>,
    /// Lexicographically least member of each root's class.
    least: Vec<usize>,
    trace: Vec<Step>,
}

impl<'d> Engine<'d> {
    fn new(d: &'d PDiagram) -> Self {
        let n = d.rank();
        let mut value = vec![Label::Infinity; n * n];
        for (i, j, m) in d.edges() {
            value[i * n + j] = Label::Finite(m);
            value[j * n + i] = Label::Finite(m);
        }
        Engine {
            d,
            uf: UnionFind::new(n),
            value,
            least: (0..n).collect(),
            trace: Vec::new(),
        }
    }

    fn get(&self, a: usize, b: usize) -> Label {
        self.value[a * self.d.rank() + b]
    }

    fn set(&mut self, a: usize, b: usize, l: Label) {
        let n = self.d.rank();
        self.value[a * n + b] = l;
        self.value[b * n + a] = l;
    }

    fn class_name(&mut self, i: usize) -> String {
        let r = self.uf.find(i);
        self.d.name(self.least[r]).to_string()
    }

    fn merge(&mut self, a: usize, b: usize, queue: &mut VecDeque<(usize, usize, bool)>) {
        let n = self.d.rank();
        let Some((root, absorbed)) = self.uf.union(a, b) else {
            return;
        };
        let (la, lb) = (self.least[root], self.least[absorbed]);
        if self.d.name(lb) < self.d.name(la) {
            self.least[root] = lb;
        }
        let class = self.d.name(self.least[root]).to_string();
        for w in 0..n {
            if self.uf.find(w) != w || w == root {
                continue;
            }
            let (x, y) = (self.get(root, w), self.get(absorbed, w));
            let g = x.gcd(y);
            if let (Label::Finite(left), Label::Finite(right), Label::Finite(gcd)) = (x, y, g) {
                let other = self.d.name(self.least[w]).to_string();
                self.trace.push(Step::Coalesce {
                    class: class.clone(),
                    other,
                    left,
                    right,
                    gcd,
                });
            }
            self.set(root, w, g);
            if g == Label::Finite(1) {
                queue.push_back((root, w, true));
            }
        }
    }

    fn run(mut self, relators: &[PowerRelator]) -> QuotientOutcome {
        let mut queue: VecDeque<(usize, usize, bool)> = VecDeque::new();
        for r in relators.iter().filter(|r| r.exponent > 1) {
            let (a, b) = (self.uf.find(r.s), self.uf.find(r.t));
            let old = self.get(a, b);
            let new = old.gcd(Label::Finite(r.exponent));
            if let (Label::Finite(from), Label::Finite(to)) = (old, new) {
                if from != to {
                    self.trace.push(Step::Reduce {
                        s: self.d.name(r.s).into(),
                        t: self.d.name(r.t).into(),
                        from,
                        to,
                    });
                }
            }
            self.set(a, b, new);
            if new == Label::Finite(1) {
                queue.push_back((a, b, true));
            }
        }
        for r in relators.iter().filter(|r| r.exponent == 1) {
            queue.push_back((r.s, r.t, false));
        }
        while let Some((a, b, cascade)) = queue.pop_front() {
            if self.uf.same(a, b) {
                continue;
            }
            let (s, t) = (self.class_name(a), self.class_name(b));
            self.trace.push(if cascade {
                Step::Cascade { s, t }
            } else {
                Step::Identify { s, t }
            });
            self.merge(a, b, &mut queue);
        }

        let n = self.d.rank();
        let roots: Vec<usize> = (0..n).map(|i| self.uf.find(i)).collect();
        let (diagram, class_map) = assemble(self.d, &roots, |a, b| self.get(a, b));
        QuotientOutcome {
            diagram,
            class_map,
            trace: self.trace,
        }
    }
}

/// The Coxeter presentation of `W` modulo the normal closure of the given
/// power relators.
///
/// Relators with exponent 1 may sit on any pair; larger exponents must
/// divide the pair's finite label in `d`.
pub fn quotient_by_power_relators(
    d: &PDiagram,
    relators: &[PowerRelator],
) -> Result<QuotientOutcome, QuotientError> {
    for r in relators {
        validate(d, r)?;
    }
    Ok(Engine::new(d).run(relators))
}

/// Lowers the label of `s`-`t` to a proper divisor `k > 1`.
pub fn reduce_edge_label(
    d: &PDiagram,
    s: usize,
    t: usize,
    k: u32,
) -> Result<QuotientOutcome, QuotientError> {
    validate(d, &PowerRelator::new(s, t, 1))?;
    let (sn, tn) = (d.name(s).to_string(), d.name(t).to_string());
    let m = d
        .label(s, t)
        .finite()
        .ok_or_else(|| QuotientError::InfiniteLabel {
            s: sn.clone(),
            t: tn.clone(),
        })?;
    if k <= 1 || k >= m || m % k != 0 {
        return Err(QuotientError::NotProperDivisor {
            s: sn,
            t: tn,
            label: m,
            exponent: k,
        });
    }
    quotient_by_power_relators(d, &[PowerRelator::new(s, t, k)])
}

/// Identifies `s` with `t`, coalescing labels and cascading as needed.
pub fn eliminate_edge(d: &PDiagram, s: usize, t: usize) -> Result<QuotientOutcome, QuotientError> {
    let r = PowerRelator::new(s, t, 1);
    validate(d, &r)?;
    if !d.label(s, t).is_finite() {
        return Err(QuotientError::InfiniteLabel {
            s: d.name(s).into(),
            t: d.name(t).into(),
        });
    }
    quotient_by_power_relators(d, &[r])
}
