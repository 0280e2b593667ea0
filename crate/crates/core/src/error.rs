use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),

    #[error("subspace is not a two-sided ideal")]
    NotIdeal,

    #[error("ideal is not nilpotent")]
    NotNilpotent,

    #[error("algebra is not semisimple (radical dimension {0})")]
    NotSemisimple(usize),

    #[error("semisimple quotient has an unsplit block")]
    UnsplitQuotient,

    #[error("not a unital subalgebra: {0}")]
    NotSubalgebra(String),

    #[error("invalid section: {0}")]
    InvalidSection(String),

    #[error("quiver has an oriented cycle; its path algebra is infinite dimensional")]
    InfiniteDimensional,

    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),

    #[error("quiver is not representation-finite (underlying graph is not ADE)")]
    NotRepresentationFinite,

    #[error("invalid root system type: {0}")]
    InvalidRootType(String),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("tensor power {n} exceeds the symmetric-group cap {cap}")]
    ExponentTooLarge { n: usize, cap: usize },

    #[error("exponent hypothesis fails: witness x has x^{exponent} != 0")]
    ExponentHypothesisFails {
        exponent: usize,
        witness: crate::matrix::RatMatrix,
    },

    #[error("matrix is not nilpotent")]
    NotNilpotentMatrix,

    #[error("morphism chain: {0}")]
    InvalidChain(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}
