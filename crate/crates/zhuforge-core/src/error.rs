//! Error type shared across the library.
//!
//! "Out of truncation" is deliberately *not* an error in the checking flows —
//! mode actions return [`crate::voa::Windowed`] so that inconclusive data is
//! explicit. The variants here are hard failures: malformed inputs, violated
//! preconditions, or requests the stored window genuinely cannot answer.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0} vs {1}")]
    DimMismatch(usize, usize),

    #[error("index {index} out of range for dimension {dim}")]
    IndexRange { index: usize, dim: usize },

    #[error("out of truncation window: {0}; raise the cutoff")]
    OutOfTruncation(String),

    #[error("subspace is not graded: {0}")]
    NotGraded(String),

    #[error("ground field does not split the module: {0}")]
    NotSplit(String),

    #[error("action is not semisimple: {0}")]
    NotSemisimple(String),

    #[error("module is not irreducible: proper invariant subspace of dim {0}")]
    NotIrreducible(usize),

    #[error("incompatible cutoffs: {0}")]
    IncompatibleCutoffs(String),

    #[error("fusion dimension forms disagree: hom form {hom} vs dual form {dual}; a hypothesis (semisimplicity/splitness) is violated")]
    FusionFormMismatch { hom: usize, dual: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
