//! Seeded random diagrams for property checks.

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::diagram::{Label, PDiagram};
use crate::finite_type::{base_of, Base, FiniteType};
use crate::fixtures::standard;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CorpusError {
    #[error("rank range {0}..={1} is empty")]
    RankRange(usize, usize),
    #[error("edge probability {0} is outside [0, 1]")]
    Probability(f64),
    #[error("labels must be at least 2, found {0}")]
    Label(u32),
    #[error("label weights must be positive and not all zero")]
    Weights,
}

/// Parameters of a random corpus. Each pair of generators independently
/// gets a finite label with probability `edge_probability`, drawn from the
/// weighted `labels`, and is left at infinity otherwise.
#[derive(Debug, Clone, PartialEq)]
pub struct CorpusSpec {
    pub seed: u64,
    pub count: usize,
    pub min_rank: usize,
    pub max_rank: usize,
    pub edge_probability: f64,
    /// `(label, weight)` pairs.
    pub labels: Vec<(u32, u32)>,
}

impl CorpusSpec {
    /// Ranks 1 to 8, edge probability 1/2, labels 2 to 12 uniformly.
    pub fn new(seed: u64, count: usize) -> Self {
        CorpusSpec {
            seed,
            count,
            min_rank: 1,
            max_rank: 8,
            edge_probability: 0.5,
            labels: (2..=12).map(|m| (m, 1)).collect(),
        }
    }

    pub fn ranks(mut self, min: usize, max: usize) -> Self {
        self.min_rank = min;
        self.max_rank = max;
        self
    }

    pub fn edge_probability(mut self, p: f64) -> Self {
        self.edge_probability = p;
        self
    }

    pub fn labels(mut self, labels: impl IntoIterator<Item = (u32, u32)>) -> Self {
        self.labels = labels.into_iter().collect();
        self
    }

    /// Uniform over the even labels up to `bound`.
    pub fn even_labels(self, bound: u32) -> Self {
        self.labels((2..=bound).step_by(2).map(|m| (m, 1)))
    }

    fn validate(&self) -> Result<(), CorpusError> {
        if self.min_rank > self.max_rank {
            return Err(CorpusError::RankRange(self.min_rank, self.max_rank));
        }
        if !(0.0..=1.0).contains(&self.edge_probability) {
            return Err(CorpusError::Probability(self.edge_probability));
        }
        if let Some(&(m, _)) = self.labels.iter().find(|&&(m, _)| m < 2) {
            return Err(CorpusError::Label(m));
        }
        if self.edge_probability > 0.0 && self.labels.iter().all(|&(_, w)| w == 0) {
            return Err(CorpusError::Weights);
        }
        Ok(())
    }
}

struct Sampler {
    rng: ChaCha8Rng,
    p: f64,
    labels: Vec<u32>,
    weights: Option<WeightedIndex<u32>>,
}

impl Sampler {
    fn new(spec: &CorpusSpec) -> Result<Self, CorpusError> {
        spec.validate()?;
        let weights = if spec.edge_probability > 0.0 {
            Some(
                WeightedIndex::new(spec.labels.iter().map(|&(_, w)| w))
                    .map_err(|_| CorpusError::Weights)?,
            )
        } else {
            None
        };
        Ok(Sampler {
            rng: ChaCha8Rng::seed_from_u64(spec.seed),
            p: spec.edge_probability,
            labels: spec.labels.iter().map(|&(m, _)| m).collect(),
            weights,
        })
    }

    fn label(&mut self) -> Label {
        match &self.weights {
            Some(w) if self.rng.random_bool(self.p) => {
                Label::Finite(self.labels[w.sample(&mut self.rng)])
            }
            _ => Label::Infinity,
        }
    }

    fn diagram(&mut self, rank: usize, prefix: &str) -> PDiagram {
        let names: Vec<String> = (1..=rank).map(|i| format!("{prefix}{i}")).collect();
        let mut d = PDiagram::new(names.clone()).expect("distinct names");
        for i in 0..rank {
            for j in i + 1..rank {
                if let Label::Finite(m) = self.label() {
                    d.add_edge(&names[i], &names[j], m).expect("valid edge");
                }
            }
        }
        d
    }
}

/// `spec.count` diagrams on generators `g1, g2, ..`; identical for equal
/// specs.
pub fn generate_random(spec: &CorpusSpec) -> Result<Vec<PDiagram>, CorpusError> {
    let mut s = Sampler::new(spec)?;
    Ok((0..spec.count)
        .map(|_| {
            let rank = s.rng.random_range(spec.min_rank..=spec.max_rank);
            s.diagram(rank, "g")
        })
        .collect())
}

const PLANTED: [FiniteType; 4] = [
    FiniteType::C(3),
    FiniteType::C(5),
    FiniteType::D2(6),
    FiniteType::D2(10),
];

/// Random diagrams each carrying a planted unreduced base of type `C3`,
/// `C5`, `D2(6)` or `D2(10)` on generators `p1, p2, ..`, returned with that
/// base. The random part follows `spec`; every random generator either
/// commutes with the whole base or is joined to its exchange end `a` by
/// infinity (and to the rest by a random label).
pub fn generate_unreduced(spec: &CorpusSpec) -> Result<Vec<(PDiagram, Base)>, CorpusError> {
    let mut s = Sampler::new(spec)?;
    let mut out = Vec::with_capacity(spec.count);
    for _ in 0..spec.count {
        let rank = s.rng.random_range(spec.min_rank..=spec.max_rank);
        let mut d = s.diagram(rank, "g");
        let kind = PLANTED[s.rng.random_range(0..PLANTED.len())];
        let shape = standard(kind);
        let k = shape.rank();
        let planted: Vec<String> = (1..=k).map(|i| format!("p{i}")).collect();
        let mut names = d.names().to_vec();
        names.extend(planted.iter().cloned());
        let mut full = PDiagram::new(names).expect("distinct names");
        for (i, j, m) in d.edges() {
            full.add_edge(d.name(i), d.name(j), m).expect("valid edge");
        }
        for (i, j, m) in shape.edges() {
            full.add_edge(&planted[i], &planted[j], m)
                .expect("valid edge");
        }
        // The C chain ends in its 4-edge, so a is the last generator; the
        // dihedral witness is p1.
        let a = match kind {
            FiniteType::C(_) => k - 1,
            _ => 0,
        };
        for g in d.names().to_vec() {
            if s.rng.random_bool(0.5) {
                for p in &planted {
                    full.add_edge(&g, p, 2).expect("valid edge");
                }
            } else {
                for (t, p) in planted.iter().enumerate() {
                    if t == a {
                        continue;
                    }
                    if let Label::Finite(m) = s.label() {
                        full.add_edge(&g, p, m).expect("valid edge");
                    }
                }
            }
        }
        d = full;
        let members = d.subset(&planted).expect("planted names exist");
        let base = base_of(&d, &members).expect("planted subset is a base");
        out.push((d, base));
    }
    Ok(out)
}
