use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("Coxeter matrix is not symmetric at ({0}, {1})")]
    NonSymmetricMatrix(usize, usize),
    #[error("malformed Coxeter matrix: {0}")]
    MalformedMatrix(String),
    #[error("unsupported bond order {0} (allowed: 2, 3, 4, 6, infinity)")]
    UnsupportedBondOrder(u32),
    #[error("generators {0} and {1} are conjugate but have different weights")]
    WeightConjugacyViolation(String, String),
    #[error("weight of generator {0} must be positive")]
    NonPositiveWeight(String),
    #[error("ball enumeration exceeded the element cap of {0}")]
    ResourceLimit(usize),
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
    #[error("word {0:?} does not lie in the ball of radius {1}")]
    NotInBall(String, usize),
    #[error("parabolic subgroup generated by {0} is not closed in the ball")]
    ParabolicNotClosedInBall(String),
    #[error("result support reaches length {0}, beyond the ball radius {1}")]
    SupportEscapesBall(usize, usize),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("weight hypothesis violated: {0}")]
    WeightHypothesisViolated(String),
    #[error("hypothesis failed at {witness}: offending term {offending}")]
    HypothesisFailed { witness: String, offending: String },
    #[error("L(t) = {weight} does not exceed the bound N = {bound}")]
    WeightTooSmall { weight: i32, bound: i32 },
    #[error("subset of U is not downward closed: {0} lies below a member but is missing")]
    NotDownwardClosed(String),
    #[error("alcove {0} is not covered by the region table")]
    UnclassifiedAlcove(String),
    #[error("operation requires a rank-2 affine system (3 generators), got {0}")]
    UnsupportedRank(usize),
    #[error("invalid data: {0}")]
    InvalidData(String),
}

pub type Result<T> = std::result::Result<T, Error>;
