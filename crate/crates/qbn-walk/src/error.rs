use thiserror::Error;

use crate::vertex::Vertex;

#[derive(Debug, Error)]
pub enum Error {
    #[error("mode index {mode} out of range (max {max})")]
    ModeOutOfRange { mode: usize, max: usize },

    #[error("level {level} exceeds enumeration limit {max}")]
    EnumerationLimit { level: usize, max: usize },

    #[error("level {level} exceeds dense-matrix limit {max}")]
    DimensionLimit { level: usize, max: usize },

    #[error("state has amplitude at {vertex} outside truncation level {level}")]
    SupportExceedsTruncation { vertex: Vertex, level: usize },

    #[error("initial state is not a unit vector (norm {norm})")]
    NonUnitNorm { norm: f64 },

    #[error("initial state leaves the requested parity sector (defect {defect:.3e})")]
    SectorViolation { defect: f64 },

    #[error("duplicate vertex {0} in state input")]
    DuplicateVertex(Vertex),

    #[error("invalid weight: {0}")]
    InvalidWeight(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
