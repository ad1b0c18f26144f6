use alloc::string::String;
use alloc::vec::Vec;

use crate::IntVec;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("not symmetric")]
    NotSymmetric,
    #[error("point {point} out of range for {n} points")]
    PointOutOfRange { point: usize, n: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("gauge violation: weights sum to {0}, expected 0")]
    Gauge(String),
    #[error("not negative/hypermetric type: sum of b is {0}")]
    NotHypermetricType(i64),
    #[error("S not b-balanced")]
    NotBalanced,
    #[error("unknown cone family `{0}`")]
    UnknownFamily(String),
    #[error("{what} on {points} points exceeds the limit of {limit}")]
    TooLarge {
        what: &'static str,
        points: usize,
        limit: usize,
    },
    #[error("not a semi-metric: triangle inequality fails on ({0},{1},{2})")]
    NotAMetric(usize, usize, usize),
    #[error("empty input")]
    Empty,
    #[error("inconsistent equalities")]
    Inconsistent,
    #[error("cone is missing its {0} representation")]
    MissingRepresentation(&'static str),
    #[error("vector is negative on generator {index}")]
    InvalidOnGenerator { index: usize, generator: IntVec },
    #[error("T not a root")]
    NotRoot,
    #[error("complement of T not a root")]
    ComplementNotRoot,
    #[error("not a facet")]
    NotAFacet,
    #[error("cone is not pointed: lineality space of dimension {}", .0.len())]
    NotPointed(Vec<IntVec>),
    #[error("resource cap exceeded after {processed} of {total} constraints ({rays} rays)")]
    ResourceCap {
        processed: usize,
        total: usize,
        rays: usize,
    },
    #[error("stopped by observer after {processed} of {total} constraints")]
    Interrupted { processed: usize, total: usize },
    #[error("checkpoint does not match this problem: {0}")]
    BadCheckpoint(String),
    #[error("vector set is not invariant under the group")]
    NotInvariant,
}
