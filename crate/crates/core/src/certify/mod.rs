//! Exact linear-algebra certificates over cylinder functions, plus the
//! empirical Birkhoff and keylem tables.

mod birkhoff;
mod bound;
mod cylinder;
mod keylem;
mod span;
mod sturmian;

pub use birkhoff::{birkhoff_average, thue_morse_cyclicity_evidence, BirkhoffAverage, CyclicityEvidence, DecayRow};
pub use bound::{decomposition_coefficients, multiplicity_upper_bound, CylinderCertificate, MultiplicityBound};
pub use cylinder::CylinderFunction;
pub use keylem::{keylem_decay, KeylemRow, KeylemTable, LetterFrequency, WordChooser};
pub use span::{combine, functions_rank, span_contains, span_rank, Coefficient, Membership, SpanCertificate, WordWeight};
pub use sturmian::{sturmian_simplicity_certificate, RankLevel, SturmianCertificate};
