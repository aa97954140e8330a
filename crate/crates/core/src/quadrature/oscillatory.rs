//! Fourier integrals of the two ₁F₁ kernels behind the position-space
//! eigenfunctions:
//!
//! ```text
//! even: ∫ e^{-ikx}   ₁F₁(3/4; 1/2; -iβx²) dx
//! odd:  ∫ e^{-ikx} x ₁F₁(5/4; 3/2; -iβx²) dx,      Im β < 0
//! ```
//!
//! For `Im β < 0` the exponential branch of ₁F₁ is a Gaussian in `x`, while
//! the algebraic branch decays only like `|x|^(-3/2)`. The integral is split
//! at a cutoff `X`: `[0, X]` goes to the adaptive engine (after folding the
//! even/odd symmetry) and `[X, ∞)` is integrated term by term from the
//! algebraic asymptotic series, each term by repeated integration by parts.

use super::gauss_kronrod::integrate_finite;
use super::{IntervalSpec, QuadratureResult, Tolerance};
use crate::error::{Error, Result};
use crate::specfun::{gamma, hyp1f1, pochhammer, rgamma};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Which kernel to transform.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FourierKernel {
    /// `₁F₁(3/4; 1/2; -iβx²)`, even in `x`.
    Even,
    /// `x ₁F₁(5/4; 3/2; -iβx²)`, odd in `x`.
    Odd,
}

impl FourierKernel {
    fn params(self) -> (f64, f64) {
        match self {
            FourierKernel::Even => (0.75, 0.5),
            FourierKernel::Odd => (1.25, 1.5),
        }
    }
}

/// Number of algebraic asymptotic terms carried into the tail.
const TAIL_TERMS: usize = 4;
const MAX_CUTOFF_DOUBLINGS: usize = 12;

/// Starting cutoff `max(10/√|Im β|, 50|k|/|β|)`.
pub fn oscillatory_cutoff(k: f64, beta: Complex64) -> f64 {
    (10.0 / beta.im.abs().sqrt()).max(50.0 * k.abs() / beta.norm())
}

/// Closed form of the transform:
///
/// ```text
/// even: 2^(3/2) e^{i5π/8} π √|k| β^(-3/4) / Γ(-1/4) · e^{ik²/4β}
/// odd:  e^{i7π/8} π √(2|k|) β^(-5/4) / Γ(1/4) · e^{ik²/4β} · sgn k
/// ```
///
/// with principal-branch powers of `β`.
pub fn fourier_closed_form(kernel: FourierKernel, k: f64, beta: Complex64) -> Result<Complex64> {
    if !(beta.im < 0.0) {
        return Err(Error::Domain(format!("Im(beta) must be negative, got {beta}")));
    }
    let gauss = Complex64::new(0.0, k * k / 4.0) / beta;
    let gauss = gauss.exp();
    Ok(match kernel {
        FourierKernel::Even => {
            let phase = Complex64::from_polar(1.0, 5.0 * PI / 8.0);
            phase * (2f64.powf(1.5) * PI * k.abs().sqrt()) * beta.powf(-0.75) * rgamma(Complex64::new(-0.25, 0.0))
                * gauss
        }
        FourierKernel::Odd => {
            if k == 0.0 {
                return Ok(Complex64::new(0.0, 0.0));
            }
            let phase = Complex64::from_polar(1.0, 7.0 * PI / 8.0);
            phase * (PI * (2.0 * k.abs()).sqrt()) * beta.powf(-1.25) * rgamma(Complex64::new(0.25, 0.0))
                * gauss
                * k.signum()
        }
    })
}

/// `∫_X^∞ e^{ikx} x^-ν dx` by its integration-by-parts series, truncated at
/// the smallest term. Returns (value, first omitted term).
fn exp_power_tail(k: f64, nu: f64, x: f64) -> (Complex64, f64) {
    if k == 0.0 {
        return (Complex64::new(x.powf(1.0 - nu) / (nu - 1.0), 0.0), 0.0);
    }
    let ratio = Complex64::new(0.0, -1.0 / (k * x));
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let mut omitted = f64::INFINITY;
    for m in 0..60 {
        let next = term * ratio * (nu + m as f64);
        if next.norm() >= term.norm() {
            omitted = term.norm();
            break;
        }
        sum += next;
        term = next;
        omitted = next.norm();
    }
    let prefactor = Complex64::new(0.0, 1.0 / k) * Complex64::new(0.0, k * x).exp() * x.powf(-nu);
    (prefactor * sum, prefactor.norm() * omitted)
}

/// Integrate the even or odd kernel against `e^{-ikx}` over the real line.
pub fn integrate_oscillatory_ft(
    kernel: FourierKernel,
    k: f64,
    beta: Complex64,
    tol: Tolerance,
) -> Result<QuadratureResult<Complex64>> {
    if !(beta.im < 0.0) {
        return Err(Error::Domain(format!("Im(beta) must be negative, got {beta}")));
    }
    if !k.is_finite() || !(beta.re.is_finite() && beta.im.is_finite()) {
        return Err(Error::Domain("non-finite wavenumber or beta".into()));
    }
    let (a, b) = kernel.params();
    let ac = Complex64::new(a, 0.0);
    let bc = Complex64::new(b, 0.0);
    let kernel_value = move |x: f64| -> Result<Complex64> {
        let z = Complex64::new(0.0, -1.0) * beta * (x * x);
        let f = hyp1f1(ac, bc, z)?.value;
        Ok(match kernel {
            FourierKernel::Even => f * (2.0 * (k * x).cos()),
            FourierKernel::Odd => f * Complex64::new(0.0, -2.0 * x * (k * x).sin()),
        })
    };
    if kernel == FourierKernel::Odd && k == 0.0 {
        return Ok(QuadratureResult {
            value: Complex64::new(0.0, 0.0),
            abs_err_est: 0.0,
            n_evals: 1,
            tail_contribution: Complex64::new(0.0, 0.0),
            cutoff: None,
        });
    }

    // coefficients of the algebraic branch, x^-(3/2 + 2s) after the kernel's x factor
    let ib = Complex64::new(0.0, 1.0) * beta;
    let lead = gamma(bc)? * rgamma(bc - ac);
    let coeffs: Vec<Complex64> = (0..=TAIL_TERMS)
        .map(|s| {
            let sf = s as f64;
            lead * pochhammer(ac, s) * pochhammer(ac - bc + 1.0, s) / factorial(s) * ib.powf(-(a + sf))
        })
        .collect();

    let finite_tol = Tolerance {
        abs_tol: 0.5 * tol.abs_tol,
        rel_tol: 0.5 * tol.rel_tol,
        ..tol
    };
    let mut x = oscillatory_cutoff(k, beta);
    let mut finite = integrate_finite(kernel_value, IntervalSpec::new(0.0, x)?, finite_tol)?;
    let mut n_evals = finite.n_evals;
    for _ in 0..MAX_CUTOFF_DOUBLINGS {
        let mut tail = Complex64::new(0.0, 0.0);
        let mut tail_err = 0.0;
        for (s, c) in coeffs.iter().enumerate().take(TAIL_TERMS) {
            let nu = 1.5 + 2.0 * s as f64;
            let (plus, e_plus) = exp_power_tail(k, nu, x);
            let (minus, e_minus) = exp_power_tail(-k, nu, x);
            let piece = match kernel {
                FourierKernel::Even => plus + minus,
                FourierKernel::Odd => -(plus - minus),
            };
            tail += c * piece;
            tail_err += c.norm() * (e_plus + e_minus);
        }
        // first omitted asymptotic term, bounded by its absolute integral
        let nu_next = 1.5 + 2.0 * TAIL_TERMS as f64;
        tail_err += coeffs[TAIL_TERMS].norm() * 2.0 * x.powf(1.0 - nu_next) / (nu_next - 1.0);
        // exponential branch dropped beyond X: |e^z| = e^{Im(β) X²}
        let dropped = (beta.im * x * x).exp() * x.powf(1.0 + 2.0 * (a - b).abs()) * lead.norm();
        tail_err += dropped;

        let value = finite.value + tail;
        if tail_err <= 0.1 * tol.target(value.norm()) {
            return Ok(QuadratureResult {
                value,
                abs_err_est: finite.abs_err_est + tail_err,
                n_evals,
                tail_contribution: tail,
                cutoff: Some(x),
            });
        }
        let ext = integrate_finite(kernel_value, IntervalSpec::new(x, 2.0 * x)?, finite_tol)?;
        n_evals += ext.n_evals;
        finite.value += ext.value;
        finite.abs_err_est += ext.abs_err_est;
        x *= 2.0;
    }
    Err(Error::ToleranceNotMet {
        value: finite.value,
        abs_err_est: f64::INFINITY,
        n_evals,
    })
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}
