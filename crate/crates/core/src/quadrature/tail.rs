use super::gauss_kronrod::integrate_with_breaks;
use super::{IntegrandValue, IntervalSpec, QuadratureResult, Tolerance};
use crate::error::{Error, Result};

/// Where the coefficient of the algebraic tail comes from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TailCoefficient<T> {
    /// Fit `C1 x^-k + C2 x^-(k+2)` to the integrand at the cutoff.
    Fitted,
    /// Known leading coefficient `C` of `C x^-k`.
    Supplied(T),
}

/// Algebraic decay model `f(x) ~ C x^-k` used beyond a cutoff.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailModel<T> {
    /// Decay exponent `k > 1`.
    pub exponent: f64,
    /// Initial cutoff; doubled until the tail is converged.
    pub cutoff: f64,
    pub coefficient: TailCoefficient<T>,
}

impl<T> TailModel<T> {
    pub fn fitted(exponent: f64, cutoff: f64) -> Self {
        TailModel {
            exponent,
            cutoff,
            coefficient: TailCoefficient::Fitted,
        }
    }
}

/// Relative residual of the tail model allowed at the cutoff.
const MAX_TAIL_RESIDUAL: f64 = 0.05;
const MAX_DOUBLINGS: usize = 40;

struct TailFit<T> {
    integral: T,
    evals: usize,
}

/// Fit the model at `x` and integrate it over `[x, ∞)`.
/// `Ok(None)` means the model does not describe the integrand at `x` yet.
fn fit_tail<T, F>(f: &F, x: f64, model: &TailModel<T>) -> Result<Option<TailFit<T>>>
where
    T: IntegrandValue,
    F: Fn(f64) -> Result<T>,
{
    let k = model.exponent;
    match model.coefficient {
        TailCoefficient::Supplied(c) => {
            let fx = f(x)?;
            let model_x = c * x.powf(-k);
            let residual = (fx - model_x).magnitude() / fx.magnitude().max(f64::MIN_POSITIVE);
            if residual > MAX_TAIL_RESIDUAL {
                return Ok(None);
            }
            Ok(Some(TailFit {
                integral: c * (x.powf(1.0 - k) / (k - 1.0)),
                evals: 1,
            }))
        }
        TailCoefficient::Fitted => {
            let g1 = f(x)? * x.powf(k);
            let g2 = f(2.0 * x)? * (2.0 * x).powf(k);
            // g(x) = C1 + C2 x^-2 through both points
            let c2_scaled = (g1 - g2) * (4.0 / 3.0); // C2 x^-2
            let c1 = (g2 * 4.0 - g1) * (1.0 / 3.0);
            let xm = 1.5 * x;
            let fm = f(xm)?;
            let model_m = (c1 + c2_scaled * (1.0 / 2.25)) * xm.powf(-k);
            let residual = (fm - model_m).magnitude() / fm.magnitude().max(f64::MIN_POSITIVE);
            if residual > MAX_TAIL_RESIDUAL && (fm - model_m).magnitude() > 0.0 {
                return Ok(None);
            }
            let integral = (c1 * (1.0 / (k - 1.0)) + c2_scaled * (1.0 / (k + 1.0))) * x.powf(1.0 - k);
            Ok(Some(TailFit { integral, evals: 3 }))
        }
    }
}

/// `∫_lower^∞ f` as an adaptive finite part up to a cutoff `X` plus the
/// closed-form tail of the algebraic model. `X` is doubled until moving it
/// changes the result by less than `0.1 * abs_tol`; that change is added to
/// the reported error.
pub fn integrate_semi_infinite<T, F>(
    f: F,
    lower: f64,
    tail: TailModel<T>,
    breaks: &[f64],
    tol: Tolerance,
) -> Result<QuadratureResult<T>>
where
    T: IntegrandValue,
    F: Fn(f64) -> Result<T>,
{
    if !(tail.exponent > 1.0) {
        return Err(Error::Domain(format!(
            "tail exponent must exceed 1, got {}",
            tail.exponent
        )));
    }
    if !lower.is_finite() || !(tail.cutoff > lower) || tail.cutoff <= 0.0 {
        return Err(Error::Domain(format!(
            "cutoff {} must be positive and above the lower limit {lower}",
            tail.cutoff
        )));
    }
    let mut x = tail.cutoff;
    // the finite part shares the accuracy budget with the tail
    let finite_tol = Tolerance {
        abs_tol: 0.5 * tol.abs_tol,
        rel_tol: 0.5 * tol.rel_tol,
        ..tol
    };
    let mut finite = integrate_with_breaks(&f, IntervalSpec::new(lower, x)?, breaks, finite_tol)?;
    let mut n_evals = finite.n_evals;
    let mut prev: Option<(T, T)> = None; // (total, tail) at the previous cutoff
    let mut last_residual = f64::INFINITY;

    for _ in 0..MAX_DOUBLINGS {
        match fit_tail(&f, x, &tail)? {
            Some(fit) => {
                n_evals += fit.evals;
                let total = finite.value + fit.integral;
                if let Some((prev_total, _)) = prev {
                    let change = (total - prev_total).magnitude();
                    if change <= 0.1 * tol.abs_tol {
                        return Ok(QuadratureResult {
                            value: total,
                            abs_err_est: finite.abs_err_est + change,
                            n_evals,
                            tail_contribution: fit.integral,
                            cutoff: Some(x),
                        });
                    }
                }
                prev = Some((total, fit.integral));
            }
            None => {
                last_residual = MAX_TAIL_RESIDUAL;
                prev = None;
            }
        }
        let ext = integrate_with_breaks(&f, IntervalSpec::new(x, 2.0 * x)?, &[], finite_tol)?;
        n_evals += ext.n_evals;
        finite.value = finite.value + ext.value;
        finite.abs_err_est += ext.abs_err_est;
        x *= 2.0;
    }
    match prev {
        Some((total, tail_part)) => Err(Error::ToleranceNotMet {
            value: total.to_complex(),
            abs_err_est: finite.abs_err_est + tail_part.magnitude(),
            n_evals,
        }),
        None => Err(Error::TailModel {
            residual: last_residual,
            cutoff: x,
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_cube_from_one() {
        let r = integrate_semi_infinite(
            |x: f64| Ok(x.powi(-3)),
            1.0,
            TailModel::fitted(3.0, 2.0),
            &[],
            Tolerance::default(),
        )
        .unwrap();
        assert!((r.value - 0.5).abs() < 1e-10);
        assert!(r.tail_contribution > 0.0);
    }

    #[test]
    fn supplied_coefficient() {
        let r = integrate_semi_infinite(
            |x: f64| Ok(2.0 * x.powi(-3)),
            1.0,
            TailModel {
                exponent: 3.0,
                cutoff: 4.0,
                coefficient: TailCoefficient::Supplied(2.0),
            },
            &[],
            Tolerance::default(),
        )
        .unwrap();
        assert!((r.value - 1.0).abs() < 1e-10);
    }

    #[test]
    fn subleading_correction_is_captured() {
        // 1/(1+x^2)^2 ~ x^-4 - 2 x^-6; ∫_0^∞ = π/4
        let r = integrate_semi_infinite(
            |x: f64| Ok((1.0 + x * x).powi(-2)),
            0.0,
            TailModel::fitted(4.0, 5.0),
            &[],
            Tolerance::default(),
        )
        .unwrap();
        assert!((r.value - std::f64::consts::FRAC_PI_4).abs() < 1e-10);
    }

    #[test]
    fn wrong_model_is_reported() {
        // exponential-times-oscillation never matches a power law
        let e = integrate_semi_infinite(
            |x: f64| Ok((x * 0.01).exp() * (1.0 + 0.5 * (3.0 * x).sin())),
            0.0,
            TailModel::fitted(3.0, 1.0),
            &[],
            Tolerance::default(),
        )
        .unwrap_err();
        assert!(matches!(e, Error::TailModel { .. } | Error::ToleranceNotMet { .. } | Error::Domain(_)));
    }

    #[test]
    fn exponent_must_exceed_one() {
        let e = integrate_semi_infinite(|x: f64| Ok(1.0 / x), 1.0, TailModel::fitted(1.0, 2.0), &[], Tolerance::default())
            .unwrap_err();
        assert!(matches!(e, Error::Domain(_)));
    }
}
