use thiserror::Error;

use crate::oracle::BangBangPath;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("continuity violation at junction {index}: gap {gap:e}")]
    ContinuityViolation { index: usize, gap: f64 },

    #[error("curvature bound must be positive and finite, got {0}")]
    InvalidCurvatureBound(f64),

    #[error("precondition violated: {0}")]
    PreconditionViolation(String),

    #[error("estimated curvature {estimate:.6} at sample {index} exceeds limit {limit:.6}")]
    CurvatureViolation {
        index: usize,
        estimate: f64,
        limit: f64,
    },

    #[error("invalid sampled path: {0}")]
    InvalidSamples(String),

    #[error("no csc replacement with arcs shorter than pi between the fragment endpoints")]
    NoReplacement,

    #[error("total turning {0} does not differ from the heading change by a multiple of 2pi")]
    NonIntegralTurning(f64),

    #[error("oracle budget exhausted (best endpoint residual {residual:e})")]
    BudgetExhausted {
        best: Option<Box<BangBangPath>>,
        residual: f64,
    },

    #[error("path has no self intersection")]
    NoSelfIntersection,

    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
