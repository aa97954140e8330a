use crate::eigenstates::{ParityIndex, PhysicalParams};
use crate::error::{Error, Result};
use crate::quadrature::{
    integrate_semi_infinite, integrate_with_breaks, IntervalSpec, QuadratureResult, TailModel, Tolerance,
};
use crate::specfun::{gamma_real, hyp1f1, hyp1f1_real};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Predicted limit of the interval masses as `τ_I → 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DeltaVerdict {
    /// The interval excludes the origin.
    TendsToZero,
    /// The interval straddles the origin.
    TendsToOne,
    /// Too few elements to speak of a limit; only the bound is checked.
    Bounded,
}

/// Masses of the collapse density over a fixed interval along a decreasing
/// sequence of `τ_I`.
#[derive(Debug, Clone, PartialEq)]
pub struct DeltaTestReport {
    pub interval: IntervalSpec,
    pub tau_i_sequence: Vec<f64>,
    pub masses: Vec<f64>,
    pub mass_errors: Vec<f64>,
    pub verdict: DeltaVerdict,
    /// Least-squares slope of `log m` (or `log(1 - m)`) against `log τ_I`.
    pub fitted_rate: f64,
    /// The same slope from the last two elements only.
    pub tail_rate: f64,
    pub max_mass: f64,
}

fn u_density_norm(n: ParityIndex) -> Result<f64> {
    let g = gamma_real((1.0 + 2.0 * n.as_f64()) / 4.0)?;
    Ok(PI * 4f64.powi(1 - n.n() as i32) / (g * g))
}

/// Collapse density in `u = q √(μ/2ħτ_I)`; free of `τ_I`.
fn u_density(u: f64, n: ParityIndex, norm: f64) -> Result<f64> {
    let nf = n.as_f64();
    let f = hyp1f1_real((3.0 + 2.0 * nf) / 4.0, 0.5 + nf, -u * u)?;
    Ok(norm * u.powi(2 * n.n() as i32) * f * f)
}

/// `∫_a^b` of the `u`-density for `0 <= a < b`.
fn u_mass(a: f64, b: f64, n: ParityIndex, tol: Tolerance) -> Result<QuadratureResult<f64>> {
    let norm = u_density_norm(n)?;
    integrate_with_breaks(
        |u: f64| u_density(u, n, norm),
        IntervalSpec::new(a, b)?,
        &[0.5, 1.0, 2.0, 4.0],
        tol,
    )
}

/// Mass over `(α, β)` at one `τ_I`. Negative intervals are mirrored so that
/// they give bit-identical results to their positive images.
fn interval_mass(iv: IntervalSpec, tau_i: f64, n: ParityIndex, params: PhysicalParams, tol: Tolerance) -> Result<(f64, f64)> {
    let scale = (params.mu / (2.0 * params.hbar * tau_i)).sqrt();
    let (lo, hi) = (iv.lower * scale, iv.upper * scale);
    if iv.lower > 0.0 {
        let r = u_mass(lo, hi, n, tol)?;
        Ok((r.value, r.abs_err_est))
    } else if iv.upper < 0.0 {
        let r = u_mass(-hi, -lo, n, tol)?;
        Ok((r.value, r.abs_err_est))
    } else {
        let left = u_mass(0.0, -lo, n, tol)?;
        let right = u_mass(0.0, hi, n, tol)?;
        Ok((left.value + right.value, left.abs_err_est + right.abs_err_est))
    }
}

fn slope(x: &[f64], y: &[f64]) -> f64 {
    let m = x.len() as f64;
    if x.len() < 2 {
        return f64::NAN;
    }
    let mx = x.iter().sum::<f64>() / m;
    let my = y.iter().sum::<f64>() / m;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    sxy / sxx
}

/// Interval masses of the collapse density along `tau_i_sequence`, checked
/// against the limit the interval predicts (0 away from the origin, 1 across
/// it).
pub fn delta_sequence_test(
    interval: IntervalSpec,
    n: ParityIndex,
    tau_r: f64,
    tau_i_sequence: &[f64],
    params: PhysicalParams,
) -> Result<DeltaTestReport> {
    if interval.lower == 0.0 || interval.upper == 0.0 {
        return Err(Error::Domain("interval endpoints must be nonzero".into()));
    }
    if !interval.is_finite() {
        return Err(Error::Domain("interval must be finite".into()));
    }
    if !tau_r.is_finite() {
        return Err(Error::Domain(format!("tau_r {tau_r} is not finite")));
    }
    if tau_i_sequence.is_empty() {
        return Err(Error::Domain("empty tau_i sequence".into()));
    }
    for w in tau_i_sequence.windows(2) {
        if !(w[1] < w[0]) {
            return Err(Error::Domain("tau_i sequence must be strictly decreasing".into()));
        }
    }
    if let Some(&bad) = tau_i_sequence.iter().find(|&&t| !(t > 0.0 && t.is_finite())) {
        return Err(Error::Normalizability { tau_i: bad });
    }

    let tol = Tolerance {
        abs_tol: 1e-14,
        rel_tol: 1e-13,
        ..Tolerance::default()
    };
    let mut masses = Vec::with_capacity(tau_i_sequence.len());
    let mut errors = Vec::with_capacity(tau_i_sequence.len());
    for &ti in tau_i_sequence {
        let (m, e) = interval_mass(interval, ti, n, params, tol)?;
        masses.push(m);
        errors.push(e);
    }

    let verdict = if tau_i_sequence.len() < 2 {
        DeltaVerdict::Bounded
    } else if interval.contains_origin() {
        DeltaVerdict::TendsToOne
    } else {
        DeltaVerdict::TendsToZero
    };
    for k in 1..masses.len() {
        let slack = errors[k] + errors[k - 1] + 1e-12;
        let wrong_way = match verdict {
            DeltaVerdict::TendsToZero => masses[k] > masses[k - 1] + slack,
            DeltaVerdict::TendsToOne => masses[k] < masses[k - 1] - slack,
            DeltaVerdict::Bounded => false,
        };
        if wrong_way {
            return Err(Error::NonMonotone {
                index: k,
                previous: masses[k - 1],
                current: masses[k],
            });
        }
    }

    let logs_t: Vec<f64> = tau_i_sequence.iter().map(|t| t.ln()).collect();
    let logs_m: Vec<f64> = masses
        .iter()
        .map(|&m| match verdict {
            DeltaVerdict::TendsToOne => (1.0 - m).ln(),
            _ => m.ln(),
        })
        .collect();
    let k = logs_t.len();
    let tail_rate = if k >= 2 { slope(&logs_t[k - 2..], &logs_m[k - 2..]) } else { f64::NAN };
    Ok(DeltaTestReport {
        interval,
        tau_i_sequence: tau_i_sequence.to_vec(),
        max_mass: masses.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        fitted_rate: slope(&logs_t, &logs_m),
        tail_rate,
        masses,
        mass_errors: errors,
        verdict,
    })
}

/// `∫₀^∞ q^2n |₁F₁(n/2 + 3/4; 1/2 + n; -cq²)|² dq` by quadrature with a `q⁻³` tail.
fn kummer_square_integral(c: Complex64, n: u32, tol: Tolerance) -> Result<QuadratureResult<f64>> {
    if !(c.re > 0.0) || !c.im.is_finite() {
        return Err(Error::Domain(format!("Re(c) must be positive, got {c}")));
    }
    let nf = n as f64;
    let a = Complex64::new(0.5 * nf + 0.75, 0.0);
    let b = Complex64::new(0.5 + nf, 0.0);
    let width = 1.0 / c.norm().sqrt();
    let cutoff = (45.0 / c.re).sqrt().max(60f64.sqrt() * width).max(1.0);
    let f = |q: f64| -> Result<f64> {
        let v = hyp1f1(a, b, -c * (q * q))?.value;
        Ok(q.powi(2 * n as i32) * v.norm_sqr())
    };
    integrate_semi_infinite(
        f,
        0.0,
        TailModel::fitted(3.0, cutoff),
        &[0.5 * width, width, 2.0 * width, 4.0 * width],
        tol,
    )
}

fn formula_tolerance() -> Tolerance {
    Tolerance {
        abs_tol: 1e-12,
        rel_tol: 1e-11,
        ..Tolerance::default()
    }
}

/// `∫₀^∞ u^2n ₁F₁((3+2n)/4; 1/2+n; -u²)² du`.
pub fn half_line_u_integral(n: ParityIndex) -> Result<QuadratureResult<f64>> {
    kummer_square_integral(Complex64::new(1.0, 0.0), n.n(), formula_tolerance())
}

/// Half of the collapse-density mass in the `u` variable; the limit of the
/// mass of `(0, β)` as `τ_I → 0`. Equals 1/2.
pub fn half_mass_limit(n: ParityIndex) -> Result<f64> {
    Ok(u_density_norm(n)? * half_line_u_integral(n)?.value)
}

/// Closed form `4^(n-1) |c|^(1/2-n) Γ(1/4 + n/2)² / (2π Re c)`.
pub fn integral_formula_rhs(c: Complex64, n: u32) -> Result<f64> {
    if !(c.re > 0.0) {
        return Err(Error::Domain(format!("Re(c) must be positive, got {c}")));
    }
    let nf = n as f64;
    let g = gamma_real(0.25 + 0.5 * nf)?;
    Ok(4f64.powf(nf - 1.0) * c.norm().powf(0.5 - nf) * g * g / (2.0 * PI * c.re))
}

/// Quadrature against closed form for the Kummer-square integral.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegralFormulaReport {
    pub c: Complex64,
    pub n: u32,
    pub lhs: QuadratureResult<f64>,
    pub rhs: f64,
    pub rel_dev: f64,
}

pub fn integral_formula_check(c: Complex64, n: u32) -> Result<IntegralFormulaReport> {
    let rhs = integral_formula_rhs(c, n)?;
    let lhs = kummer_square_integral(c, n, formula_tolerance())?;
    Ok(IntegralFormulaReport {
        c,
        n,
        lhs,
        rhs,
        rel_dev: (lhs.value - rhs).abs() / rhs,
    })
}
