//! Numerical integration and differentiation.
//!
//! * [`integrate_finite`]: adaptive Gauss–Kronrod (10/21) with worst-panel
//!   bisection.
//! * [`integrate_semi_infinite`]: finite part plus a closed-form algebraic tail.
//! * [`integrate_oscillatory_ft`]: the two Fourier integrals of ₁F₁ kernels
//!   with analytic tails.
//! * [`finite_difference`]: central differences on sampled values.

mod finite_difference;
mod gauss_kronrod;
mod oscillatory;
mod tail;

pub use finite_difference::{central_derivative, finite_difference, richardson};
pub use gauss_kronrod::{integrate_finite, integrate_with_breaks};
pub use oscillatory::{fourier_closed_form, integrate_oscillatory_ft, oscillatory_cutoff, FourierKernel};
pub use tail::{integrate_semi_infinite, TailCoefficient, TailModel};

use crate::error::{Error, Result};
use num_complex::Complex64;
use std::fmt::Debug;
use std::ops::{Add, Mul, Sub};

/// Integration interval; either end may be infinite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntervalSpec {
    pub lower: f64,
    pub upper: f64,
}

impl IntervalSpec {
    pub fn new(lower: f64, upper: f64) -> Result<Self> {
        if lower.is_nan() || upper.is_nan() || lower >= upper {
            return Err(Error::Domain(format!("invalid interval ({lower}, {upper})")));
        }
        Ok(IntervalSpec { lower, upper })
    }

    pub fn is_finite(&self) -> bool {
        self.lower.is_finite() && self.upper.is_finite()
    }

    pub fn contains_origin(&self) -> bool {
        self.lower < 0.0 && self.upper > 0.0
    }
}

/// Accuracy request for the adaptive engines.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Maximum number of bisections of any initial panel.
    pub max_depth: usize,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            abs_tol: 1e-10,
            rel_tol: 1e-8,
            max_depth: 50,
        }
    }
}

impl Tolerance {
    pub fn new(abs_tol: f64, rel_tol: f64) -> Result<Self> {
        if !(abs_tol > 0.0 && rel_tol > 0.0) {
            return Err(Error::Domain(format!(
                "tolerances must be positive (abs {abs_tol}, rel {rel_tol})"
            )));
        }
        Ok(Tolerance {
            abs_tol,
            rel_tol,
            ..Default::default()
        })
    }

    pub(crate) fn target(&self, value: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.abs())
    }
}

/// Outcome of an integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult<T> {
    pub value: T,
    /// Estimated absolute error, `>= 0`.
    pub abs_err_est: f64,
    pub n_evals: usize,
    /// Closed-form tail included in `value` (zero for finite intervals).
    pub tail_contribution: T,
    /// Cutoff where the tail model takes over, if any.
    pub cutoff: Option<f64>,
}

/// Values an integrand may return: `f64` or `Complex64`.
pub trait IntegrandValue:
    Copy + Default + Debug + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> + Send + Sync
{
    fn magnitude(&self) -> f64;
    fn to_complex(&self) -> Complex64;
    fn is_finite_value(&self) -> bool;
}

impl IntegrandValue for f64 {
    fn magnitude(&self) -> f64 {
        self.abs()
    }
    fn to_complex(&self) -> Complex64 {
        Complex64::new(*self, 0.0)
    }
    fn is_finite_value(&self) -> bool {
        self.is_finite()
    }
}

impl IntegrandValue for Complex64 {
    fn magnitude(&self) -> f64 {
        self.norm()
    }
    fn to_complex(&self) -> Complex64 {
        *self
    }
    fn is_finite_value(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
}
