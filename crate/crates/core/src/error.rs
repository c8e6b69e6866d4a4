use thiserror::Error;

/// Errors raised by the symbolic-dynamics routines.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("empty word where a nonempty word is required")]
    EmptyWord,

    #[error("letter {0:?} is not a printable ASCII symbol")]
    BadLetter(char),

    #[error("continued fraction too short to resolve level {level}: found {found} factors, expected {expected}")]
    CfTooShort {
        level: usize,
        found: usize,
        expected: usize,
    },

    #[error("resource cap exceeded: {what} needs {requested}, limit is {limit}")]
    ResourceCap {
        what: &'static str,
        requested: usize,
        limit: usize,
    },

    #[error("internal consistency failure: {0}")]
    Consistency(String),

    #[error("no right-special words at level {level}")]
    NoSpecialWords { level: usize },

    #[error("level {n} is not a good scale for k = {k}")]
    NotGoodScale { n: usize, k: usize },

    #[error("no right-special occurrence within the left horizon for context {context}")]
    NoSpecialHit { context: String },

    #[error("piece {q} at offset {t} does not determine the target word")]
    PieceNotDeterministic { t: usize, q: String },

    #[error("window [{a}, {b}] does not contain [{need_a}, {need_b}]")]
    WindowTooSmall {
        a: i64,
        b: i64,
        need_a: i64,
        need_b: i64,
    },

    #[error("rank deficiency at level {level}: rank {rank}, expected {expected}")]
    RankDeficiency {
        level: usize,
        rank: usize,
        expected: usize,
    },

    #[error("certificate failed: {0}")]
    CertificateFailed(String),

    #[error("input is not a bijection: {0}")]
    NotBijective(String),
}

pub type Result<T> = std::result::Result<T, Error>;
