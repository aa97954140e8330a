use super::norm::position_moment;
use crate::eigenstates::{Eigenvalue, ParityIndex, PhysicalParams};
use crate::error::{Error, Result};
use crate::quadrature::{finite_difference, richardson, Tolerance};

/// Modified spread `σ(t) = ∫ |q|^γ |φ(q, t)|² dq` and its time derivatives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpreadResult {
    pub gamma: f64,
    pub t: f64,
    pub sigma: f64,
    pub sigma_err: f64,
    /// `∂_t σ`
    pub d1: f64,
    /// `∂²_t σ`; positive at a local minimum.
    pub d2: f64,
    /// Time step of the finer stencil.
    pub h: f64,
}

/// Time step for derivatives in `t`: `max(1e-4, τ_I/50)`.
pub fn time_step(tau_i: f64) -> f64 {
    (tau_i / 50.0).max(1e-4)
}

/// `σ` with default tolerances.
pub fn spread(tau: Eigenvalue, n: ParityIndex, t: f64, gamma: f64, params: PhysicalParams) -> Result<SpreadResult> {
    let tol = Tolerance {
        abs_tol: 1e-12,
        rel_tol: 1e-12,
        ..Tolerance::default()
    };
    spread_with(tau, n, t, gamma, params, tol)
}

/// `σ` at `t`; `d1` and `d2` from five-point stencils at steps `h` and `2h`
/// combined by Richardson extrapolation.
pub fn spread_with(
    tau: Eigenvalue,
    n: ParityIndex,
    t: f64,
    gamma: f64,
    params: PhysicalParams,
    tol: Tolerance,
) -> Result<SpreadResult> {
    if !(0.0..2.0).contains(&gamma) {
        return Err(Error::Domain(format!(
            "spread needs 0 <= gamma < 2, got {gamma}: the integral diverges otherwise"
        )));
    }
    tau.require_normalizable()?;
    let h = time_step(tau.tau_i);
    let offsets = [-4, -2, -1, 0, 1, 2, 4];
    let mut values = [0.0; 7];
    let mut sigma_err = 0.0;
    for (v, &j) in values.iter_mut().zip(&offsets) {
        let r = position_moment(tau.shifted(t + j as f64 * h), n, params, gamma, tol)?;
        *v = r.value;
        if j == 0 {
            sigma_err = r.abs_err_est;
        }
    }
    let [m4, m2, m1, c, p1, p2, p4] = values;
    let fine = [m2, m1, c, p1, p2];
    let coarse = [m4, m2, c, p2, p4];
    let d1 = richardson(finite_difference(&fine, 1, h)?, finite_difference(&coarse, 1, 2.0 * h)?, 4);
    let d2 = richardson(finite_difference(&fine, 2, h)?, finite_difference(&coarse, 2, 2.0 * h)?, 4);
    Ok(SpreadResult {
        gamma,
        t,
        sigma: c,
        sigma_err,
        d1,
        d2,
        h,
    })
}
