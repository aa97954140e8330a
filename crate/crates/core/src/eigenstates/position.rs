use super::{Eigenvalue, ParityIndex, PhysicalParams, SpacetimePoint};
use crate::error::{Error, Result};
use crate::specfun::{gamma_real, hyp1f1, hyp1f1_real, SpecialEvalReport};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Position-space value together with the ₁F₁ evaluation behind it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PositionEval {
    pub value: Complex64,
    pub report: SpecialEvalReport,
}

/// `q`-independent pieces of the position eigenfunction for one `(τ, n)`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct PositionKernel {
    pub a: f64,
    pub b: f64,
    /// `C_n` times the unimodular phase.
    pub prefactor: Complex64,
    /// `z = zscale · q²`
    pub zscale: Complex64,
    pub n: ParityIndex,
}

impl PositionKernel {
    /// With `normalized = false` the `√τ_I` factor is dropped, which allows
    /// real eigenvalues.
    pub fn new(tau: Eigenvalue, n: ParityIndex, params: PhysicalParams, normalized: bool) -> Result<Self> {
        let s = tau.as_complex();
        let abs_s = s.norm();
        if abs_s == 0.0 {
            return Err(Error::Domain("eigenvalue tau - t vanishes".into()));
        }
        let nf = n.as_f64();
        let a = 0.75 + 0.5 * nf;
        let b = 0.5 + nf;
        let weight = if normalized { tau.tau_i } else { 1.0 };
        let c_n = (8.0 * weight * PI / abs_s).sqrt() / gamma_real(0.25 + 0.5 * nf)?
            * (params.mu / (8.0 * params.hbar * abs_s)).powf(0.25 + 0.5 * nf);
        // The inverse Fourier transform carries i^n (-iτ/|τ|)^(-a); it is
        // unimodular and leaves every density unchanged.
        let rot = Complex64::new(0.0, -1.0) * s / abs_s;
        let mut phase = rot.powc(Complex64::new(-a, 0.0));
        if n == ParityIndex::ODD {
            phase *= Complex64::new(0.0, 1.0);
        }
        let zscale = Complex64::new(0.0, -params.mu / (2.0 * params.hbar)) / s;
        Ok(PositionKernel {
            a,
            b,
            prefactor: phase * c_n,
            zscale,
            n,
        })
    }

    pub fn eval(&self, q: f64) -> Result<PositionEval> {
        if !q.is_finite() {
            return Err(Error::Domain(format!("position {q} is not finite")));
        }
        let x = q.abs();
        let report = hyp1f1(self.a.into(), self.b.into(), self.zscale * (x * x))?;
        let mut value = self.prefactor * report.value;
        if self.n == ParityIndex::ODD {
            value *= q;
        }
        Ok(PositionEval { value, report })
    }
}

/// Normalized eigenfunction in position space, with its ₁F₁ report.
pub fn varphi_position_eval(q: f64, tau: Eigenvalue, n: ParityIndex, params: PhysicalParams) -> Result<PositionEval> {
    tau.require_normalizable()?;
    PositionKernel::new(tau, n, params, true)?.eval(q)
}

/// Normalized eigenfunction in position space,
///
/// ```text
/// φ(q) = C_n P_n q^n ₁F₁(3/4 + n/2; 1/2 + n; -iμq²/2ħτ)
/// C_n  = √(8τ_Iπ/|τ|) Γ(1/4 + n/2)⁻¹ (μ/8ħ|τ|)^(1/4 + n/2)
/// P_n  = iⁿ (-iτ/|τ|)^-(3/4 + n/2)
/// ```
///
/// `P_n` is the unit-modulus phase that makes `φ(q)` the inverse Fourier
/// transform `(2πħ)^-1/2 ∫ e^{ipq/ħ} φ(p) dp` of [`varphi_momentum`](super::varphi_momentum).
pub fn varphi_position(q: f64, tau: Eigenvalue, n: ParityIndex, params: PhysicalParams) -> Result<Complex64> {
    varphi_position_eval(q, tau, n, params).map(|e| e.value)
}

/// The eigenfunction evolved to time `t`: [`varphi_position`] at `τ - t`.
pub fn varphi_evolved(x: SpacetimePoint, tau: Eigenvalue, n: ParityIndex, params: PhysicalParams) -> Result<Complex64> {
    varphi_position(x.q, tau.shifted(x.t), n, params)
}

/// `|φ(q, t)|²`
pub fn evolved_density(x: SpacetimePoint, tau: Eigenvalue, n: ParityIndex, params: PhysicalParams) -> Result<f64> {
    varphi_evolved(x, tau, n, params).map(|v| v.norm_sqr())
}

/// Density at the collapse time `t = τ_R`, evaluated with a real argument:
///
/// ```text
/// 8π q^2n Γ((1+2n)/4)⁻² (μ/8ħτ_I)^(1/2+n) ₁F₁((3+2n)/4; 1/2+n; -μq²/2ħτ_I)²
/// ```
pub fn collapse_density(q: f64, tau: Eigenvalue, n: ParityIndex, params: PhysicalParams) -> Result<f64> {
    tau.require_normalizable()?;
    if !q.is_finite() {
        return Err(Error::Domain(format!("position {q} is not finite")));
    }
    let nf = n.as_f64();
    let g = gamma_real((1.0 + 2.0 * nf) / 4.0)?;
    let scale = (params.mu / (8.0 * tau.tau_i * params.hbar)).powf(0.5 + nf);
    let x = -params.mu * q * q / (2.0 * params.hbar * tau.tau_i);
    let f = hyp1f1_real((3.0 + 2.0 * nf) / 4.0, 0.5 + nf, x)?;
    Ok(8.0 * PI * q.powi(2 * n.n() as i32) / (g * g) * scale * f * f)
}
