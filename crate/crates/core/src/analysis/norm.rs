use crate::eigenstates::{varphi_momentum, varphi_position, Eigenvalue, ParityIndex, PhysicalParams};
use crate::error::{Error, Result};
use crate::quadrature::{integrate_semi_infinite, integrate_with_breaks, IntervalSpec, QuadratureResult, TailModel, Tolerance};

/// Where the norm is computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Representation {
    Momentum,
    Position,
}

/// Beyond `e^-GAUSS_EXPONENT` the Gaussian parts are negligible.
const GAUSS_EXPONENT: f64 = 40.0;

/// `∫ |q|^γ |φ(q)|² dq` over the real line for the state with eigenvalue `s`
/// (already shifted by the evolution time). The density is even, so the half
/// line is integrated and doubled; beyond the cutoff the density is treated
/// as `C₁q⁻³ + C₂q⁻⁵`, i.e. the integrand has exponent `3 - γ`.
pub fn position_moment(
    s: Eigenvalue,
    n: ParityIndex,
    params: PhysicalParams,
    gamma: f64,
    tol: Tolerance,
) -> Result<QuadratureResult<f64>> {
    s.require_normalizable()?;
    if !(0.0..2.0).contains(&gamma) {
        return Err(Error::Domain(format!("moment exponent must lie in [0, 2), got {gamma}")));
    }
    let abs_s = s.as_complex().norm();
    let (mu, hbar) = (params.mu, params.hbar);
    // |z| = 1 and |z| = 30 radii, and the point where the Gaussian branch is gone
    let q1 = (2.0 * hbar * abs_s / mu).sqrt();
    let q30 = (60.0 * hbar * abs_s / mu).sqrt();
    let qg = (2.0 * GAUSS_EXPONENT * hbar * abs_s * abs_s / (mu * s.tau_i)).sqrt();
    let cutoff = q30.max(qg);
    let breaks = [0.25 * q1, q1, 4.0 * q1, q30];
    let f = |q: f64| -> Result<f64> {
        let d = varphi_position(q, s, n, params)?.norm_sqr();
        Ok(if gamma == 0.0 { d } else { q.powf(gamma) * d })
    };
    let half = Tolerance {
        abs_tol: 0.5 * tol.abs_tol,
        rel_tol: tol.rel_tol,
        ..tol
    };
    let r = integrate_semi_infinite(f, 0.0, TailModel::fitted(3.0 - gamma, cutoff), &breaks, half)?;
    Ok(QuadratureResult {
        value: 2.0 * r.value,
        abs_err_est: 2.0 * r.abs_err_est,
        n_evals: r.n_evals,
        tail_contribution: 2.0 * r.tail_contribution,
        cutoff: r.cutoff,
    })
}

fn momentum_norm(s: Eigenvalue, n: ParityIndex, params: PhysicalParams, tol: Tolerance) -> Result<QuadratureResult<f64>> {
    s.require_normalizable()?;
    let scale = (params.mu * params.hbar / s.tau_i).sqrt();
    let p_max = GAUSS_EXPONENT.sqrt() * scale;
    let half = Tolerance {
        abs_tol: 0.5 * tol.abs_tol,
        rel_tol: tol.rel_tol,
        ..tol
    };
    let f = |p: f64| varphi_momentum(p, s, n, params).map(|v| v.norm_sqr());
    let r = integrate_with_breaks(f, IntervalSpec::new(0.0, p_max)?, &[0.5 * scale, scale, 2.0 * scale], half)?;
    // |φ|² dp = e^-x dx / 2 with x = p²τ_I/μħ, so the tail is e^-X / 2 per side
    let tail = 0.5 * (-GAUSS_EXPONENT).exp();
    Ok(QuadratureResult {
        value: 2.0 * (r.value + tail),
        abs_err_est: 2.0 * r.abs_err_est,
        n_evals: r.n_evals,
        tail_contribution: 2.0 * tail,
        cutoff: Some(p_max),
    })
}

/// `∫ |φ|²` of the state evolved to time `t`.
pub fn norm_check(
    tau: Eigenvalue,
    n: ParityIndex,
    t: f64,
    rep: Representation,
    params: PhysicalParams,
) -> Result<QuadratureResult<f64>> {
    let tol = Tolerance {
        abs_tol: 1e-11,
        rel_tol: 1e-11,
        ..Tolerance::default()
    };
    norm_check_with(tau, n, t, rep, params, tol)
}

pub fn norm_check_with(
    tau: Eigenvalue,
    n: ParityIndex,
    t: f64,
    rep: Representation,
    params: PhysicalParams,
    tol: Tolerance,
) -> Result<QuadratureResult<f64>> {
    tau.require_normalizable()?;
    let s = tau.shifted(t);
    match rep {
        Representation::Momentum => momentum_norm(s, n, params, tol),
        Representation::Position => position_moment(s, n, params, 0.0, tol),
    }
}
