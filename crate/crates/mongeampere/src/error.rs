use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("structure {name}: {condition} fails")]
    InvalidStructure { name: String, condition: String },
    #[error("form is not bieffective (wedge with {0} is nonzero)")]
    NotBieffective(&'static str),
    #[error("2-form is degenerate")]
    Degenerate,
    #[error("rank-deficient tangent frame at sample {sample}")]
    RankDeficientFrame { sample: usize },
    #[error("invalid block parameters: {0}")]
    InvalidBlock(String),
    #[error("unknown name: {0}")]
    UnknownName(String),
    #[error("{0}")]
    Evaluation(String),
}
