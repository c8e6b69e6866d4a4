//! Finite permutation systems: multiplicity through coboundaries and the
//! embedding of their measure simplex into a shift.

mod perm;
mod plan;

pub use perm::{finite_mult, fix_dimension, FiniteMeasure, MultiplicityCertificate, PermutationSystem};
pub use plan::{
    build_embedding, build_embedding_as, embedding_dimension, injectivity_certificate, psi_eval, EmbeddingCase,
    EmbeddingPlan, InjectivityCertificate, PeriodicSequence,
};
