use super::{sgn, Eigenvalue, MomentumBranch, ParityIndex, PhysicalParams};
use crate::error::{Error, Result};
use num_complex::Complex64;

fn gaussian_phase(p: f64, tau: Eigenvalue, params: PhysicalParams) -> Complex64 {
    let w = p * p / (2.0 * params.mu * params.hbar);
    // exp(i p² τ / 2μħ) = exp(-w τ_I) · e^{i w τ_R}
    Complex64::from_polar((-w * tau.tau_i).exp(), w * tau.tau_r)
}

/// Unnormalized eigenfunction `√|p| e^{ip²τ/2μħ} Θ(αp)`.
///
/// Any `τ` is accepted; for `τ_I ≤ 0` this is a generalized eigenfunction.
pub fn phi_momentum(p: f64, tau: Eigenvalue, branch: MomentumBranch, params: PhysicalParams) -> Complex64 {
    let theta = branch.heaviside(p);
    if theta == 0.0 || p == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    gaussian_phase(p, tau, params) * (p.abs().sqrt() * theta)
}

/// Normalized even (`n = 0`) or odd (`n = 1`) eigenfunction in momentum space.
pub fn varphi_momentum(p: f64, tau: Eigenvalue, n: ParityIndex, params: PhysicalParams) -> Result<Complex64> {
    tau.require_normalizable()?;
    if !p.is_finite() {
        return Err(Error::Domain(format!("momentum {p} is not finite")));
    }
    let amp = (p.abs() * tau.tau_i / (params.mu * params.hbar)).sqrt();
    let parity = if n == ParityIndex::ODD { sgn(p) } else { 1.0 };
    Ok(gaussian_phase(p, tau, params) * (amp * parity))
}

/// `-iμħ (f'(p)/p - f(p)/2p²)` from a value and a derivative.
pub fn ab_operator_apply(p: f64, value: Complex64, derivative: Complex64, params: PhysicalParams) -> Result<Complex64> {
    if p == 0.0 || !p.is_finite() {
        return Err(Error::Domain(format!("operator is singular at p = {p}")));
    }
    let inner = derivative / p - value / (2.0 * p * p);
    Ok(Complex64::new(0.0, -params.mu * params.hbar) * inner)
}
