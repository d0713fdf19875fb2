//! Library-wide error type.

use crate::numerics::ode::OdeError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CoreError {
    #[error("matrix is not Hermitian within tolerance (defect {defect:.3e})")]
    NotHermitian { defect: f64 },
    #[error("density matrix trace is {trace:.6} instead of 1")]
    NonUnitTrace { trace: f64 },
    #[error("dimension must be at least 2, got {n}")]
    DimensionTooSmall { n: usize },
    #[error("time {t:.6e} outside trajectory range [0, {t_end:.6e}]")]
    TimeOutOfRange { t: f64, t_end: f64 },
    #[error("integration span must be positive, got {t_end:.6e}")]
    NonPositiveSpan { t_end: f64 },
    #[error("ODE integration failed: {0}")]
    Integration(#[from] OdeError),
    #[error(
        "propagation window too short: bound envelope {envelope:.3e} at t = {t_end:.6e} \
         exceeds {threshold:.1e}; extend t_end or relax the check"
    )]
    PropagationTooShort { t_end: f64, envelope: f64, threshold: f64 },
    #[error("analytic expression requires commuting/antisymmetric structure; conditions not met")]
    ConditionsNotMet,
    #[error("quadrature did not converge: error estimate {achieved:.3e} > tolerance {tol:.3e}")]
    QuadratureNotConverged { achieved: f64, tol: f64 },
    #[error("spectral density parameter out of range: {reason}")]
    BadSpectralDensity { reason: String },
    #[error("sampled table invalid: {reason}")]
    BadTable { reason: String },
    #[error("initial Bloch difference vector must be nonzero")]
    ZeroInitialDifference,
    #[error("closed-form approximation not applicable: {reason}")]
    ApproximationInvalid { reason: String },
    #[error("internal consistency check failed: {what}")]
    InternalConsistency { what: String },
}
