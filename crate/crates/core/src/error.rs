use thiserror::Error;

use crate::splits::Split;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed partition: {0}")]
    MalformedPartition(String),

    #[error("taxon count {n} is outside the supported range {min}..={max}")]
    TaxonCount { n: usize, min: usize, max: usize },

    #[error("splits over {left} and {right} taxa cannot be combined")]
    AmbientMismatch { left: usize, right: usize },

    #[error("duplicate split {0}")]
    DuplicateSplit(Split),

    #[error("split {split} has negative weight {weight}")]
    NegativeWeight { split: Split, weight: String },

    #[error("splits {0} and {1} are not pairwise compatible")]
    Incompatible(Split, Split),

    #[error("malformed matrix: {0}")]
    MalformedMatrix(String),

    #[error("malformed ordering: {0}")]
    MalformedOrdering(String),

    #[error("split {split} is not circular for ordering {ordering}")]
    NotCircular { split: Split, ordering: String },

    #[error("split system is not circular for any ordering")]
    NoCircularOrdering,

    #[error("twist chord {chord} crosses diagonal {crossing}")]
    IllegalTwist { chord: Split, crossing: Split },

    #[error("n = {n} exceeds the exhaustive bound {bound}")]
    Capacity { n: usize, bound: usize },

    #[error("split {0} is trivial and has no network coordinate")]
    TrivialSplit(Split),

    #[error("coordinate index {index} is out of range for {len} coordinates")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("invalid associahedron face: {0}")]
    InvalidFace(String),

    #[error("invalid moduli point: {0}")]
    InvalidModuliPoint(String),

    #[error("decode failed: {0}")]
    Decode(String),

    #[error("internal consistency error: {0}")]
    Consistency(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
