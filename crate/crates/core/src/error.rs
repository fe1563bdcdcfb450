use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),

    #[error("matrix is not positive semidefinite (min eigenvalue {0:e})")]
    NotPsd(f64),

    #[error("trace is {0}, expected 1")]
    BadTrace(f64),

    #[error("invalid priors: {0}")]
    BadPriors(String),

    #[error("degenerate ensemble: {0}")]
    DegenerateEnsemble(String),

    #[error("Gram matrix is singular (min eigenvalue {0:e})")]
    SingularGram(f64),

    #[error("invalid Gram matrix: {0}")]
    InvalidGram(String),

    #[error("discord optimization unsupported for measured dimension {0} (max 3)")]
    UnsupportedDimension(usize),

    #[error("separability condition not met (residual {0:e})")]
    ConditionNotMet(f64),

    #[error("separable decomposition does not reconstruct the state (residual {0:e})")]
    ReconstructionFailure(f64),

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("infeasible parameters: {0}")]
    Infeasible(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    /// Stable snake_case tag for machine-readable error objects.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DimensionMismatch(_) => "dimension_mismatch",
            Error::NotHermitian(_) => "not_hermitian",
            Error::NotPsd(_) => "not_psd",
            Error::BadTrace(_) => "bad_trace",
            Error::BadPriors(_) => "bad_priors",
            Error::DegenerateEnsemble(_) => "degenerate_ensemble",
            Error::SingularGram(_) => "singular_gram",
            Error::InvalidGram(_) => "invalid_gram",
            Error::UnsupportedDimension(_) => "unsupported_dimension",
            Error::ConditionNotMet(_) => "condition_not_met",
            Error::ReconstructionFailure(_) => "reconstruction_failure",
            Error::IndexOutOfRange(_) => "index_out_of_range",
            Error::Infeasible(_) => "infeasible",
            Error::InvalidInput(_) => "invalid_input",
        }
    }
}
