use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("population must contain at least one student")]
    EmptyPopulation,

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("group size {group_size} does not divide {students} students")]
    Indivisible { students: usize, group_size: usize },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("coverage error: {0}")]
    Coverage(String),

    #[error("incomplete assessment: {0}")]
    IncompleteAssessment(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid ranking: {0}")]
    InvalidRanking(String),

    #[error("power iteration did not converge after {iterations} iterations (last residual {residual:e})")]
    NonConvergence { iterations: usize, residual: f64 },

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("scheme {scheme} cannot run on this data: missing {}", missing.join(", "))]
    MissingAssessment {
        scheme: String,
        missing: Vec<&'static str>,
    },
}

impl Error {
    /// Short stable identifier, used for machine-readable error output.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::EmptyPopulation => "empty_population",
            Error::InvalidParameter { .. } => "invalid_parameter",
            Error::Indivisible { .. } => "indivisible",
            Error::Shape(_) => "shape",
            Error::Coverage(_) => "coverage",
            Error::IncompleteAssessment(_) => "incomplete_assessment",
            Error::Domain(_) => "domain",
            Error::InvalidRanking(_) => "invalid_ranking",
            Error::NonConvergence { .. } => "non_convergence",
            Error::Degenerate(_) => "degenerate",
            Error::MissingAssessment { .. } => "unsupported_scheme_for_data",
        }
    }

    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}
