use num_complex::Complex64;
use thiserror::Error;

/// Errors raised by the numerical routines of this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Gamma function evaluated at a nonpositive integer.
    #[error("gamma function pole at z = {0}")]
    Pole(Complex64),

    /// Lower parameter `b` of 1F1 is a nonpositive integer.
    #[error("1F1 parameter b = {0} is a nonpositive integer")]
    ParameterPole(Complex64),

    /// No evaluation regime reached the requested accuracy.
    #[error("no regime reached the target accuracy (best relative error {best_rel_err:e})")]
    Convergence { best_value: Complex64, best_rel_err: f64 },

    /// Argument outside the domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A normalized state was requested for an eigenvalue with nonpositive imaginary part.
    #[error("state is not normalizable for Im(tau) = {tau_i}")]
    Normalizability { tau_i: f64 },

    /// Adaptive quadrature stopped before reaching the tolerance. Carries the best estimate.
    #[error("tolerance not met: value {value}, error estimate {abs_err_est:e} after {n_evals} evaluations")]
    ToleranceNotMet {
        value: Complex64,
        abs_err_est: f64,
        n_evals: usize,
    },

    /// A panel needed more bisections than the configured maximum depth.
    #[error("maximum subdivision depth {max_depth} exceeded near x = {at}")]
    DepthExceeded { max_depth: usize, at: f64 },

    /// The algebraic tail model does not describe the integrand at the cutoff.
    #[error("tail model residual {residual:.3e} at cutoff {cutoff}")]
    TailModel { residual: f64, cutoff: f64 },

    /// Invalid finite-difference stencil.
    #[error("stencil error: {0}")]
    Stencil(String),

    /// Density is flat to within tolerance; no maximum could be located.
    #[error("no peak found: density is flat")]
    PeakNotFound,

    /// Interval masses move against the predicted limit.
    #[error("masses move against the predicted limit at index {index}: {previous} -> {current}")]
    NonMonotone {
        index: usize,
        previous: f64,
        current: f64,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
