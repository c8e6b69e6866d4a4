//! Symbolic dynamics toolkit: subshift languages, right-special words,
//! cylinder decompositions, exact span certificates and affine embeddings
//! of permutation measure simplices.
//!
//! Numeric code is generic over [`Scalar`]; the exact instantiation used
//! by every certificate is [`Rational`].

pub mod certify;
pub mod complexity;
pub mod decompose;
pub mod embed;
pub mod error;
pub mod linalg;
pub mod scalar;
pub mod subshift;
pub mod words;

pub use error::{Error, Result};
pub use scalar::Scalar;
pub use subshift::{Limits, Subshift, SubshiftSpec};
pub use words::{Alphabet, PeriodData, Word};

/// Exact rational scalar used by all certificates.
pub type Rational = num_rational::BigRational;
/// Exact rational matrix.
pub type RationalMatrix = linalg::Matrix<Rational>;
/// Floating-point matrix for quick numeric exploration.
pub type FloatMatrix = linalg::Matrix<f64>;
