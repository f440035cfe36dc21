//! Quotient isomorphism invariants of finite-rank Coxeter groups.
//!
//! A Coxeter system is handled through its presentation diagram
//! ([`PDiagram`]). The crate computes quotients of the system by
//! characteristic subgroups directly on diagrams (gcd coalescing of labels
//! with cascading identifications), giving the binary, even and spherical
//! rank-2 invariants; compares diagrams up to isomorphism through canonical
//! forms; and checks results against a Todd-Coxeter coset enumerator.

pub mod corpus;
pub mod diagram;
pub mod finite_type;
pub mod fixtures;
pub mod invariants;
pub mod iso;
pub mod matching;
pub mod oracle;
pub mod quotient;
mod unionfind;

pub use corpus::{generate_random, generate_unreduced, CorpusError, CorpusSpec};
pub use diagram::{
    emit_diagram, parse_diagram, parse_json, read_diagram, DiagramError, DiagramFormat,
    GeneratorSubset, Label, PDiagram, ParseError, Partition,
};
pub use finite_type::{
    base_of, classify_irreducible, component_types, coxeter_order, enumerate_bases,
    is_finite_subset, Base, FiniteType, TypeError,
};
pub use invariants::{
    binary_direct, binary_invariant, even_direct, even_invariant, family_quotient, rank2_greedy,
    rank2_sequence, rank2_step, two_part, FamilyError, FamilySpec, Rank2Report,
};
pub use iso::{canonical_form, canonical_key, isomorphic, CanonicalKey};
pub use matching::{
    base_reduction_status, exchange, exchange_c, exchange_d, is_special_pair, MatchingError,
    ReductionStatus,
};
pub use oracle::{
    coset_enumeration, element_order, group_order, presentation_of, Enumeration, OracleError,
    Order, Presentation, Word, DEFAULT_MAX_COSETS,
};
pub use quotient::{
    eliminate_edge, quotient_by_power_relators, reduce_edge_label, PowerRelator, QuotientError,
    QuotientOutcome, Step,
};
