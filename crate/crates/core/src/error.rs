use thiserror::Error;

use crate::dictionary::Violation;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid vector: {0}")]
    InvalidVector(String),

    #[error("invalid dictionary: {}", format_violations(.0))]
    InvalidDictionary(Vec<Violation>),

    #[error("element is not in A_{tau}: sum |a_k|^tau = {sum} exceeds 1")]
    NotInAtomicClass { sum: f64, tau: f64 },

    #[error("enumeration too large: {count} supports exceeds limit {limit}")]
    EnumerationTooLarge { count: u128, limit: u128 },

    #[error("bound refused: {0}")]
    BoundRefused(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

fn format_violations(violations: &[Violation]) -> String {
    violations
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}
