use crate::eigenstates::{varphi_momentum, Eigenvalue, ParityIndex, PhysicalParams};
use crate::error::Result;
use crate::quadrature::{integrate_with_breaks, IntervalSpec, Tolerance};

/// Where the finite part stops, in units of `x = p²τ_I/μħ`.
const X_MAX: f64 = 50.0;

/// `∫_X^∞ x^m e^-x dx` for integer `m`.
fn upper_incomplete_gamma(m: u32, x: f64) -> f64 {
    let mut term = 1.0;
    let mut sum = 1.0;
    for j in 1..=m {
        term *= x / j as f64;
        sum += term;
    }
    let factorial: f64 = (1..=m).map(|k| k as f64).product();
    factorial * (-x).exp() * sum
}

/// `(⟨E⟩, ⟨E²⟩)` for `E = p²/2μ` from the momentum density.
///
/// The density is integrated numerically up to `p_max`; beyond it the exact
/// incomplete-gamma tails are added.
pub fn energy_moments(tau: Eigenvalue, n: ParityIndex, params: PhysicalParams) -> Result<(f64, f64)> {
    tau.require_normalizable()?;
    let (mu, hbar) = (params.mu, params.hbar);
    let scale = (mu * hbar / tau.tau_i).sqrt();
    let p_max = X_MAX.sqrt() * scale;
    let tol = Tolerance {
        abs_tol: 1e-300,
        rel_tol: 1e-13,
        ..Tolerance::default()
    };
    let breaks = [0.5 * scale, scale, 2.0 * scale, 4.0 * scale];
    let iv = IntervalSpec::new(0.0, p_max)?;
    let moment = |power: i32| {
        integrate_with_breaks(
            |p: f64| {
                let e = p * p / (2.0 * mu);
                varphi_momentum(p, tau, n, params).map(|v| v.norm_sqr() * e.powi(power))
            },
            iv,
            &breaks,
            tol,
        )
    };
    // both half lines; E = (ħ/2τ_I) x and |φ|² dp = e^-x dx / 2 per side
    let unit = hbar / (2.0 * tau.tau_i);
    let e1 = 2.0 * moment(1)?.value + unit * upper_incomplete_gamma(1, X_MAX);
    let e2 = 2.0 * moment(2)?.value + unit * unit * upper_incomplete_gamma(2, X_MAX);
    Ok((e1, e2))
}

/// Energy spread `ΔE = √(⟨E²⟩ - ⟨E⟩²)`; equals `ħ/2τ_I`.
pub fn energy_uncertainty(tau: Eigenvalue, n: ParityIndex, params: PhysicalParams) -> Result<f64> {
    let (e1, e2) = energy_moments(tau, n, params)?;
    Ok((e2 - e1 * e1).sqrt())
}
