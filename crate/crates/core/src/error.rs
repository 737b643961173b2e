use thiserror::Error;

/// Errors raised by the constructions in this crate.
///
/// Variants that correspond to a violated structural condition on the
/// parameters carry a human-readable description naming that condition.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("subspaces are not complementary (I ⊕ J ≠ V′⊗V′): {0}")]
    NotComplementary(String),

    #[error("bad parameters: {0}")]
    BadParameters(String),

    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),

    #[error(
        "component count mismatch: source has {source_count} components, target has {target_count}"
    )]
    ComponentCountMismatch {
        source_count: usize,
        target_count: usize,
    },

    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),

    #[error("problem too large: {words} words exceeds the limit of {limit}")]
    TooLarge { words: u64, limit: u64 },

    #[error("B-matrix coefficients must be pairwise distinct (coefficient {0} repeats)")]
    RepeatedCoefficient(String),

    #[error("wrong shape: {0}")]
    WrongShape(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;
