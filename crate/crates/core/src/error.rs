use crate::correspondence::LineRef;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("interval has zero length: initial and terminal points coincide")]
    ZeroLength,
    #[error("a pair of distinct intervals is required, got identical four-tuples")]
    IdenticalPair,
    #[error("duplicate intervals at positions {first} and {second}")]
    DuplicateInterval { first: usize, second: usize },
    #[error("ratio must be nonzero")]
    ZeroRatio,
    #[error("line parallel to xy-plane")]
    ParallelToXyPlane,
    #[error("image line parallel to xy-plane")]
    ImageParallelToXyPlane,
    #[error("line direction must be nonzero")]
    ZeroDirection,
    #[error("plane normal must be nonzero")]
    ZeroNormal,
    #[error("all coefficients are zero")]
    AllZeroCoefficients,
    #[error("need at least {needed} points, got {got}")]
    TooFewPoints { needed: usize, got: usize },
    #[error("coincident lines")]
    CoincidentLines,
    #[error(
        "exceptional parallel pair {first:?} / {second:?}: equal (a,c) with different (b,d); apply a generic rotation first"
    )]
    ExceptionalPair { first: LineRef, second: LineRef },
    #[error("plane has A = B = 0 and cannot come from graph-form lines")]
    VerticalPencil,
    #[error("invalid rotation: {0}")]
    InvalidRotation(&'static str),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("rank-one subcase system whose lines are not concurrent")]
    RankOneWithoutConcurrency,
}
