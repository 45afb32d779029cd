//! Quantized trace functions, their relations and quantum flips.

pub mod mutation;
pub mod relations;
pub mod torus;

pub use mutation::{
    commutation_failures, quantum_mutation, quantum_mutation_all, verify_q_double_flip, verify_q_mutation_relations,
    LinearFactor, QMutationImage, QMutationReport,
};
pub use relations::{
    check_reference_relations, check_relation, find_relation_triangulation, q_relation, quantized_generators,
    quantized_reference, relation_terms, semiclassical_bracket, semiclassical_matches_poisson, FlipSearchResult,
    RelationReport,
};
pub use torus::{quantize_trace, QuantumTorusElement};
