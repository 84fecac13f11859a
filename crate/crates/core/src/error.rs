use thiserror::Error;

use crate::profile::Violation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid profile: {0}")]
    InvalidProfile(Violation),

    /// An evaluation point `j/m` landed exactly on a stored phase. A bumpy
    /// geodesic has irrational phases, so the rational surrogate cannot
    /// answer this query.
    #[error("evaluation point {point} coincides with phase t_{index}")]
    PhaseCollision { index: usize, point: String },

    #[error("evaluation point {0} outside [0, 1/2]")]
    OutOfRange(String),

    #[error("precondition violated: {0}")]
    PrecondViolation(String),

    #[error("hypotheses not met: {0}")]
    HypothesesNotMet(String),

    #[error("{0}")]
    Document(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
