use thiserror::Error;

/// Errors raised by the numerical engine.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("numerical failure: {0}")]
    Numeric(String),

    /// Broken antisymmetry or an incompatible metric / complex structure.
    #[error("structure error: {0}")]
    Structure(String),

    #[error("Jacobi identity violated: residuals ({r1:.3e}, {r2:.3e}, {r3:.3e}) exceed {tol:.3e}")]
    Jacobi { r1: f64, r2: f64, r3: f64, tol: f64 },

    #[error("almost complex structure is not integrable: Nijenhuis residual {residual:.3e}")]
    NotIntegrable { residual: f64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("codimension-2 constraints violated: residuals ({first:.3e}, {second:.3e}) exceed {tol:.3e}")]
    Constraint { first: f64, second: f64, tol: f64 },

    #[error("usage error: {0}")]
    Usage(String),
}

pub type Result<T> = std::result::Result<T, Error>;
