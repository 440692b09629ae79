use thiserror::Error;

use crate::resolvent::MonogenizationReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("precondition failed: {0}")]
    PreconditionFailed(String),

    #[error("no suitable isotropic vector of height <= {0}")]
    NotFoundWithinBound(u64),

    #[error("multiplication table is not integral: {0}")]
    NonIntegralTable(String),

    #[error("discriminant is zero")]
    DegenerateDiscriminant,

    /// A reduction step failed inside the counting pipeline; the partial
    /// report is attached.
    #[error("reduction incomplete for {} branch(es)", .0.failed_branches())]
    ReductionIncomplete(Box<MonogenizationReport>),

    #[error("{count} solutions found, exceeding the proven bound {bound}")]
    BoundExceeded { count: usize, bound: usize },

    #[error("no feasible r up to {0}")]
    NoFeasibleR(u64),
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidInput(_) => "InvalidInput",
            Error::PreconditionFailed(_) => "PreconditionFailed",
            Error::NotFoundWithinBound(_) => "NotFoundWithinBound",
            Error::NonIntegralTable(_) => "NonIntegralTable",
            Error::DegenerateDiscriminant => "DegenerateDiscriminant",
            Error::ReductionIncomplete(_) => "ReductionIncomplete",
            Error::BoundExceeded { .. } => "BoundExceeded",
            Error::NoFeasibleR(_) => "NoFeasibleR",
        }
    }
}
