//! Brute-force ground truth: Todd-Coxeter coset enumeration over Coxeter
//! presentations, with group and element orders derived from it.
//!
//! Every generator of a [`Presentation`] is an involution (the relator `s²`
//! is always present), so the coset table keeps a single column per
//! generator serving as its own inverse. The enumerator follows the
//! relator-tracing (HLT) strategy; when the table fills up it runs a
//! lookahead pass over all live cosets, compacts, and gives up only if no
//! space was recovered.

use std::fmt;

use thiserror::Error;

use crate::diagram::PDiagram;
use crate::quotient::PowerRelator;

pub const DEFAULT_MAX_COSETS: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("generator index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("empty word")]
    EmptyWord,
    #[error("relator exponent must be positive")]
    ZeroExponent,
}

/// A word in the generators of a presentation, as generator indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<usize>);

impl Word {
    pub fn from_names<S: AsRef<str>>(d: &PDiagram, letters: &[S]) -> Result<Word, OracleError> {
        letters
            .iter()
            .map(|l| {
                d.index_of(l.as_ref())
                    .map_err(|_| OracleError::UnknownGenerator(l.as_ref().to_string()))
            })
            .collect::<Result<_, _>>()
            .map(Word)
    }

    /// `(st)^k`.
    pub fn alternating(s: usize, t: usize, k: u32) -> Word {
        Word([s, t].repeat(k as usize))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Generators (all involutions) and relators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relators: Vec<Word>,
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "< {} | ", self.generators.join(", "))?;
        let words: Vec<String> = self
            .relators
            .iter()
            .map(|w| {
                w.0.iter()
                    .map(|&i| self.generators[i].as_str())
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        write!(f, "{} >", words.join(", "))
    }
}

/// The Coxeter presentation of `d` extended by the given power relators.
pub fn presentation_of(d: &PDiagram, extra: &[PowerRelator]) -> Result<Presentation, OracleError> {
    let n = d.rank();
    let mut relators: Vec<Word> = (0..n).map(|s| Word(vec![s, s])).collect();
    relators.extend(d.edges().map(|(s, t, m)| Word::alternating(s, t, m)));
    for r in extra {
        for i in [r.s, r.t] {
            if i >= n {
                return Err(OracleError::IndexOutOfRange(i));
            }
        }
        if r.exponent == 0 {
            return Err(OracleError::ZeroExponent);
        }
        relators.push(Word::alternating(r.s, r.t, r.exponent));
    }
    Ok(Presentation {
        generators: d.names().to_vec(),
        relators,
    })
}

/// Result of a bounded coset enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Enumeration {
    Index(u64),
    Overflow,
}

/// A group or element order, unless the enumeration bound was hit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Order {
    Finite(u64),
    UnknownAtBound,
}

impl Order {
    pub fn finite(self) -> Option<u64> {
        match self {
            Order::Finite(n) => Some(n),
            Order::UnknownAtBound => None,
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(n) => write!(f, "{n}"),
            Order::UnknownAtBound => f.write_str("unknown at bound"),
        }
    }
}

const NONE: u32 = u32::MAX;

struct Full;

struct CosetTable {
    gens: usize,
    rows: Vec<u32>,
    /// Coincidence forwarding; a coset is live iff it forwards to itself.
    forward: Vec<u32>,
    live: usize,
    cap: usize,
    queue: Vec<u32>,
}

impl CosetTable {
    fn new(gens: usize, cap: usize) -> Self {
        let mut t = CosetTable {
            gens,
            rows: Vec::new(),
            forward: Vec::new(),
            live: 0,
            cap,
            queue: Vec::new(),
        };
        t.push_row();
        t
    }

    fn len(&self) -> usize {
        self.forward.len()
    }

    fn push_row(&mut self) -> u32 {
        let id = self.forward.len() as u32;
        self.rows.extend(std::iter::repeat_n(NONE, self.gens));
        self.forward.push(id);
        self.live += 1;
        id
    }

    fn is_live(&self, c: u32) -> bool {
        self.forward[c as usize] == c
    }

    fn get(&self, c: u32, x: usize) -> u32 {
        self.rows[c as usize * self.gens + x]
    }

    fn set(&mut self, c: u32, x: usize, d: u32) {
        self.rows[c as usize * self.gens + x] = d;
    }

    fn define(&mut self, c: u32, x: usize) -> Result<(), Full> {
        if self.len() >= self.cap {
            return Err(Full);
        }
        let n = self.push_row();
        self.set(c, x, n);
        self.set(n, x, c);
        Ok(())
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut root = c;
        while self.forward[root as usize] != root {
            root = self.forward[root as usize];
        }
        let mut cur = c;
        while self.forward[cur as usize] != root {
            let next = self.forward[cur as usize];
            self.forward[cur as usize] = root;
            cur = next;
        }
        root
    }

    fn merge(&mut self, k: u32, l: u32) {
        let (a, b) = (self.rep(k), self.rep(l));
        if a != b {
            let (keep, kill) = if a < b { (a, b) } else { (b, a) };
            self.forward[kill as usize] = keep;
            self.queue.push(kill);
            self.live -= 1;
        }
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let g = self.queue[i];
            i += 1;
            for x in 0..self.gens {
                let d = self.get(g, x);
                if d == NONE {
                    continue;
                }
                self.set(d, x, NONE);
                let mu = self.rep(g);
                let nu = self.rep(d);
                let mu_x = self.get(mu, x);
                if mu_x != NONE {
                    self.merge(nu, mu_x);
                    continue;
                }
                let nu_x = self.get(nu, x);
                if nu_x != NONE {
                    self.merge(mu, nu_x);
                } else {
                    self.set(mu, x, nu);
                    self.set(nu, x, mu);
                }
            }
        }
    }

    /// Traces `w` from coset `c` in both directions, defining new cosets to
    /// close the gap when `fill` is set.
    fn scan(&mut self, c: u32, w: &[usize], fill: bool) -> Result<(), Full> {
        if w.is_empty() {
            return Ok(());
        }
        let (mut f, mut b) = (c, c);
        let (mut i, mut j) = (0usize, w.len() as isize - 1);
        loop {
            while (i as isize) <= j && self.get(f, w[i]) != NONE {
                f = self.get(f, w[i]);
                i += 1;
            }
            if (i as isize) > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i as isize && self.get(b, w[j as usize]) != NONE {
                b = self.get(b, w[j as usize]);
                j -= 1;
            }
            if j < i as isize {
                self.coincidence(f, b);
                return Ok(());
            }
            if j == i as isize {
                self.set(f, w[i], b);
                self.set(b, w[i], f);
                return Ok(());
            }
            if !fill {
                return Ok(());
            }
            self.define(f, w[i])?;
        }
    }

    fn lookahead(&mut self, relators: &[Word]) {
        let mut c = 0;
        while c < self.len() as u32 {
            for r in relators {
                if !self.is_live(c) {
                    break;
                }
                let _ = self.scan(c, &r.0, false);
            }
            c += 1;
        }
    }

    /// Renumbers live cosets consecutively; returns the new position of `at`
    /// (or of the next live coset after it).
    fn compact(&mut self, at: u32) -> u32 {
        let n = self.len();
        let mut map = vec![NONE; n];
        let mut next = 0u32;
        let mut new_at = None;
        for c in 0..n as u32 {
            if c >= at && new_at.is_none() {
                new_at = Some(next);
            }
            if self.is_live(c) {
                map[c as usize] = next;
                next += 1;
            }
        }
        let mut rows = Vec::with_capacity(next as usize * self.gens);
        for c in 0..n as u32 {
            if map[c as usize] == NONE {
                continue;
            }
            for x in 0..self.gens {
                let d = self.get(c, x);
                rows.push(if d == NONE { NONE } else { map[d as usize] });
            }
        }
        self.rows = rows;
        self.forward = (0..next).collect();
        self.live = next as usize;
        new_at.unwrap_or(next)
    }
}

/// Index of the subgroup generated by `subgroup` in the group presented by
/// `p`, or [`Enumeration::Overflow`] when more than `max_cosets` cosets
/// would be needed at once.
pub fn coset_enumeration(p: &Presentation, subgroup: &[Word], max_cosets: usize) -> Enumeration {
    let gens = p.generators.len();
    if max_cosets == 0 {
        return Enumeration::Overflow;
    }
    if gens == 0 {
        return Enumeration::Index(1);
    }
    let mut table = CosetTable::new(gens, max_cosets);

    // Returns false when the table stays full after lookahead.
    let recover = |table: &mut CosetTable, at: u32| -> Option<u32> {
        table.lookahead(&p.relators);
        let at = table.compact(at);
        (table.len() < table.cap).then_some(at)
    };

    let mut h = 0;
    while h < subgroup.len() {
        match table.scan(0, &subgroup[h].0, true) {
            Ok(()) => h += 1,
            Err(Full) => {
                if recover(&mut table, 0).is_none() {
                    return Enumeration::Overflow;
                }
            }
        }
    }

    let mut c: u32 = 0;
    'cosets: while (c as usize) < table.len() {
        if !table.is_live(c) {
            c += 1;
            continue;
        }
        for r in &p.relators {
            if let Err(Full) = table.scan(c, &r.0, true) {
                match recover(&mut table, c) {
                    Some(at) => {
                        c = at;
                        continue 'cosets;
                    }
                    None => return Enumeration::Overflow,
                }
            }
            if !table.is_live(c) {
                break;
            }
        }
        if table.is_live(c) {
            for x in 0..gens {
                if table.get(c, x) == NONE {
                    if let Err(Full) = table.define(c, x) {
                        match recover(&mut table, c) {
                            Some(at) => {
                                c = at;
                                continue 'cosets;
                            }
                            None => return Enumeration::Overflow,
                        }
                    }
                }
            }
        }
        c += 1;
    }
    Enumeration::Index(table.live as u64)
}

/// Order of `W` modulo the normal closure of `extra`.
pub fn group_order(
    d: &PDiagram,
    extra: &[PowerRelator],
    max_cosets: usize,
) -> Result<Order, OracleError> {
    let p = presentation_of(d, extra)?;
    Ok(match coset_enumeration(&p, &[], max_cosets) {
        Enumeration::Index(n) => Order::Finite(n),
        Enumeration::Overflow => Order::UnknownAtBound,
    })
}

/// Order of the image of `w` in `W` modulo the normal closure of `extra`,
/// computed as the group order over the index of the cyclic subgroup
/// generated by `w`.
pub fn element_order(
    d: &PDiagram,
    extra: &[PowerRelator],
    w: &Word,
    max_cosets: usize,
) -> Result<Order, OracleError> {
    if w.is_empty() {
        return Err(OracleError::EmptyWord);
    }
    if let Some(&bad) = w.0.iter().find(|&&i| i >= d.rank()) {
        return Err(OracleError::IndexOutOfRange(bad));
    }
    let p = presentation_of(d, extra)?;
    let Enumeration::Index(total) = coset_enumeration(&p, &[], max_cosets) else {
        return Ok(Order::UnknownAtBound);
    };
    let Enumeration::Index(index) = coset_enumeration(&p, std::slice::from_ref(w), max_cosets)
    else {
        return Ok(Order::UnknownAtBound);
    };
    Ok(Order::Finite(total / index))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_diagram;
    use crate::finite_type::FiniteType;
    use crate::fixtures::standard;

    fn order_of(d: &PDiagram, extra: &[PowerRelator]) -> Order {
        group_order(d, extra, DEFAULT_MAX_COSETS).unwrap()
    }

    #[test]
    fn presentation_of_dihedral() {
        let d = parse_diagram("gen a b\nedge a b 3").unwrap();
        let p = presentation_of(&d, &[]).unwrap();
        assert_eq!(p.to_string(), "< a, b | a a, b b, a b a b a b >");
    }

    #[test]
    fn presentation_with_extras() {
        let a3 = standard(FiniteType::A(3));
        let p = presentation_of(&a3, &[PowerRelator::new(0, 2, 1)]).unwrap();
        assert_eq!(p.relators.len(), 3 + 3 + 1);
        assert_eq!(p.relators.last().unwrap(), &Word(vec![0, 2]));

        let sq = crate::fixtures::fixture("square").unwrap();
        let p = presentation_of(&sq, &[PowerRelator::new(0, 1, 1)]).unwrap();
        assert_eq!(p.relators.len(), 4 + 4 + 1);
        assert!(presentation_of(&sq, &[PowerRelator::new(0, 9, 1)]).is_err());
    }

    #[test]
    fn small_orders() {
        assert_eq!(
            order_of(&standard(FiniteType::A(3)), &[]),
            Order::Finite(24)
        );
        assert_eq!(
            order_of(&standard(FiniteType::C(3)), &[]),
            Order::Finite(48)
        );
        assert_eq!(
            order_of(&standard(FiniteType::A(3)), &[PowerRelator::new(0, 2, 1)]),
            Order::Finite(6)
        );
        assert_eq!(order_of(&PDiagram::empty(), &[]), Order::Finite(1));
        assert_eq!(
            order_of(&parse_diagram("gen a").unwrap(), &[]),
            Order::Finite(2)
        );
    }

    #[test]
    fn infinite_groups_overflow() {
        let path = parse_diagram("gen a b c\nedge a b 3\nedge b c 3").unwrap();
        let p = presentation_of(&path, &[]).unwrap();
        assert_eq!(coset_enumeration(&p, &[], 10_000), Enumeration::Overflow);
        let free = parse_diagram("gen a b").unwrap();
        assert_eq!(
            group_order(&free, &[], 1000).unwrap(),
            Order::UnknownAtBound
        );
    }

    #[test]
    fn subgroup_index() {
        let a3 = standard(FiniteType::A(3));
        let p = presentation_of(&a3, &[]).unwrap();
        // The parabolic subgroup <s1, s2> = A2 has index 4 in A3.
        assert_eq!(
            coset_enumeration(&p, &[Word(vec![0]), Word(vec![1])], 1000),
            Enumeration::Index(4)
        );
    }

    #[test]
    fn tight_bound_recovers_with_lookahead() {
        let f4 = standard(FiniteType::F4);
        let p = presentation_of(&f4, &[]).unwrap();
        assert_eq!(coset_enumeration(&p, &[], 1200), Enumeration::Index(1152));
        assert_eq!(coset_enumeration(&p, &[], 1000), Enumeration::Overflow);
    }

    #[test]
    fn element_orders() {
        let g2 = parse_diagram("gen s t\nedge s t 6").unwrap();
        let st = Word::from_names(&g2, &["s", "t"]).unwrap();
        assert_eq!(
            element_order(&g2, &[], &st, 1000).unwrap(),
            Order::Finite(6)
        );
        assert_eq!(
            element_order(&g2, &[], &Word(vec![0]), 1000).unwrap(),
            Order::Finite(2)
        );
        assert_eq!(
            element_order(&g2, &[], &Word(vec![]), 1000),
            Err(OracleError::EmptyWord)
        );
        assert!(matches!(
            Word::from_names(&g2, &["s", "q"]),
            Err(OracleError::UnknownGenerator(_))
        ));
    }

    #[test]
    fn binary_quotient_of_twelve_edge() {
        // The 2-part of 12 is 4.
        let d = parse_diagram("gen s t\nedge s t 12").unwrap();
        let st = Word(vec![0, 1]);
        assert_eq!(
            element_order(&d, &[PowerRelator::new(0, 1, 4)], &st, 1000).unwrap(),
            Order::Finite(4)
        );
    }
}
