//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Family/rank combination that is not one of the finite Dynkin diagrams.
    #[error("invalid Lie type {family}{rank}: {reason}")]
    InvalidLieType {
        family: char,
        rank: usize,
        reason: String,
    },

    /// Could not parse a type string such as "B3" or "G2".
    #[error("unknown algebra {0:?}")]
    UnknownAlgebra(String),

    /// Highest weight outside the rectangular family for this algebra.
    #[error("invalid highest weight: {0}")]
    InvalidWeight(String),

    /// Bad argument to a library operation.
    #[error("input error: {0}")]
    Input(String),

    /// Series combined with incompatible truncation or weight dimension.
    #[error("series mismatch: {0}")]
    SeriesMismatch(String),

    /// Coefficient queried at an energy beyond the stored truncation.
    #[error("coefficient query at energy {energy} beyond truncation {truncation}")]
    BeyondTruncation { energy: String, truncation: String },

    /// A convention bug detector fired (non-integer depth shift, non-integer
    /// multiplicity, negative oracle coefficient, failed definiteness check).
    #[error("internal consistency error: {0}")]
    InternalConsistency(String),

    /// The coset-shift anchor case failed; the bosonic parafermionic oracle
    /// refuses to run rather than produce an unvalidated "verification".
    #[error("oracle anchor validation failed: {0}")]
    AnchorFailed(String),

    #[error("cache error: {0}")]
    Cache(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
