use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("matrix has non-finite entries")]
    NonFinite,

    #[error("matrix is not Hermitian (residual {residual:.3e})")]
    NotHermitian { residual: f64 },

    #[error("matrix is not positive definite (min eigenvalue {min_eigenvalue:.3e})")]
    NotPositiveDefinite { min_eigenvalue: f64 },

    #[error("denominator not invertible (condition estimate {condition:.3e})")]
    SingularDenominator { condition: f64 },

    #[error("matrix not invertible (condition estimate {condition:.3e})")]
    Singular { condition: f64 },

    #[error("no canonical representative: P is singular (condition estimate {condition:.3e})")]
    NoCanonicalRepresentative { condition: f64 },

    #[error("homomorphism undefined: {block} block singular (condition estimate {condition:.3e})")]
    HomomorphismUndefined { block: &'static str, condition: f64 },

    #[error("{what} violated (residual {residual:.3e})")]
    Invariant { what: &'static str, residual: f64 },

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
}

impl Error {
    /// True for failures of the numerics (conditioning, overflow) rather than of the input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::NonFinite
                | Error::SingularDenominator { .. }
                | Error::Singular { .. }
                | Error::NoCanonicalRepresentative { .. }
                | Error::HomomorphismUndefined { .. }
        )
    }

    pub(crate) fn invariant(what: &'static str, residual: f64) -> Self {
        Error::Invariant { what, residual }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
