//! Complex-argument special functions: log-gamma, gamma and Kummer's ₁F₁.

mod dd;
mod gamma;
mod hyp1f1;

pub use gamma::{gamma, gamma_real, is_nonpositive_integer, log_gamma, pochhammer, rgamma};
pub use hyp1f1::{
    hyp1f1, hyp1f1_asymptotic, hyp1f1_asymptotic_with, hyp1f1_real, hyp1f1_with, Hyp1f1Config,
    Regime, SpecialEvalReport,
};

/// Complex number used for every argument and value of this crate.
pub type ComplexValue = num_complex::Complex64;

/// `true` when both components are finite.
pub fn is_finite(z: ComplexValue) -> bool {
    z.re.is_finite() && z.im.is_finite()
}
