use num_complex::Complex64;
use thiserror::Error;

/// Errors raised by the physics and numerics layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum CasimirError {
    /// A response function was evaluated exactly at one of its poles.
    #[error("{quantity} has a pole at z = {at}")]
    Pole { quantity: &'static str, at: Complex64 },

    /// A Fresnel or loop denominator vanished; the point is a mode.
    #[error("degenerate denominator in {what} at z = {at}")]
    DegenerateDenominator { what: &'static str, at: Complex64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("{0} is undefined for these parameters")]
    Domain(String),

    #[error("quadrature failed to converge on [{lo:e}, {hi:e}] (error estimate {estimate:e})")]
    Quadrature { lo: f64, hi: f64, estimate: f64 },

    #[error("integrand does not show the declared decay beyond x = {at:e}")]
    DecayViolation { at: f64 },

    #[error("no sign change bracketing {what} on [{lo:e}, {hi:e}] (values {f_lo:e}, {f_hi:e})")]
    BracketFailure {
        what: &'static str,
        lo: f64,
        hi: f64,
        f_lo: f64,
        f_hi: f64,
    },

    #[error("phase tracking failed near z = {at} (contour likely touches a zero or pole)")]
    PhaseTracking { at: Complex64 },

    #[error("winding residual {residual:.3e} exceeds the 0.05 limit")]
    WindingResidual { residual: f64 },

    #[error("series did not converge after {terms} terms")]
    SeriesDivergence { terms: usize },

    #[error("scaled relaxation rate {gamma:e} rad/s is not well below {omega_next:e} rad/s")]
    ScaleSeparation { gamma: f64, omega_next: f64 },

    #[error("internal consistency check failed: {0}")]
    Consistency(String),
}

impl CasimirError {
    /// True for errors caused by bad inputs rather than numerical trouble.
    pub fn is_invalid_input(&self) -> bool {
        matches!(
            self,
            CasimirError::InvalidParameter(_) | CasimirError::Domain(_) | CasimirError::ScaleSeparation { .. }
        )
    }

    /// Name of the module that usually raises this error.
    pub fn module(&self) -> &'static str {
        match self {
            CasimirError::Pole { .. } => "materials",
            CasimirError::DegenerateDenominator { .. } => "optics",
            CasimirError::InvalidParameter(_) | CasimirError::Domain(_) => "config",
            CasimirError::Quadrature { .. } | CasimirError::DecayViolation { .. } => "numerics",
            CasimirError::BracketFailure { .. } => "modes",
            CasimirError::PhaseTracking { .. } | CasimirError::WindingResidual { .. } => "numerics",
            CasimirError::SeriesDivergence { .. } | CasimirError::Consistency(_) => "pressure",
            CasimirError::ScaleSeparation { .. } => "foucault",
        }
    }
}

pub type Result<T> = std::result::Result<T, CasimirError>;
