//! Kummer's confluent hypergeometric function ₁F₁(a; b; z) for complex
//! arguments, with automatic regime selection.
//!
//! * `|z| <= asymptotic_threshold`, `Re z >= kummer_re_threshold`: Maclaurin series.
//! * `|z| <= asymptotic_threshold`, `Re z < kummer_re_threshold`: Kummer's
//!   transformation `e^z ₁F₁(b-a; b; -z)` followed by the series.
//! * `|z| > asymptotic_threshold`: two-branch asymptotic expansion with
//!   optimal truncation.
//!
//! The series is first summed in double precision while tracking
//! `Σ|term|`. When the cancellation ratio `Σ|term| / |sum|` makes the double
//! result unreliable (purely imaginary or oblique `z`, where terms grow like
//! `e^|z|` while the sum stays O(1)) the sum is redone in double-double.

use super::dd::{ComplexDd, Dd};
use super::gamma::{gamma, is_nonpositive_integer, rgamma};
use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Evaluation regime actually used for a ₁F₁ value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    MaclaurinSeries,
    KummerTransform,
    AsymptoticExpansion,
}

impl Regime {
    pub fn as_str(&self) -> &'static str {
        match self {
            Regime::MaclaurinSeries => "maclaurin-series",
            Regime::KummerTransform => "kummer-transform",
            Regime::AsymptoticExpansion => "asymptotic-expansion",
        }
    }
}

/// A special-function value together with how it was obtained.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpecialEvalReport {
    pub value: Complex64,
    pub regime: Regime,
    /// Estimated relative error of `value`, always `>= 0`.
    pub est_rel_err: f64,
    /// Number of series terms summed (both branches for the asymptotic regime).
    pub terms_used: usize,
    /// Series summed in double-double arithmetic.
    pub extended_precision: bool,
    /// Asymptotic evaluation with `|arg(-z)| > 3π/4`, close to a Stokes line
    /// of the recessive branch.
    pub near_stokes_line: bool,
}

/// Tunable switch points of [`hyp1f1_with`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hyp1f1Config {
    /// `|z|` above which the asymptotic expansion is used.
    pub asymptotic_threshold: f64,
    /// `Re z` below which Kummer's transformation precedes the series.
    pub kummer_re_threshold: f64,
    /// Cap on the number of terms per asymptotic branch.
    pub max_asymptotic_terms: usize,
    /// Hard cap on Maclaurin terms.
    pub max_series_terms: usize,
    /// Requested relative accuracy; failing it is a `Convergence` error.
    pub target_rel_err: f64,
}

impl Default for Hyp1f1Config {
    fn default() -> Self {
        Hyp1f1Config {
            asymptotic_threshold: 30.0,
            kummer_re_threshold: -10.0,
            max_asymptotic_terms: 20,
            max_series_terms: 10_000,
            target_rel_err: 1e-10,
        }
    }
}

const EPS: f64 = f64::EPSILON;
const DD_EPS: f64 = 4.93e-32; // 2^-104
/// Double-precision series results with a larger error estimate are recomputed in double-double.
const SERIES_DD_TRIGGER: f64 = 1e-14;

fn check_args(a: Complex64, b: Complex64, z: Complex64) -> Result<()> {
    for (name, v) in [("a", a), ("b", b), ("z", z)] {
        if !(v.re.is_finite() && v.im.is_finite()) {
            return Err(Error::Domain(format!("1F1 argument {name} = {v} is not finite")));
        }
    }
    if is_nonpositive_integer(b) {
        return Err(Error::ParameterPole(b));
    }
    Ok(())
}

/// ₁F₁(a; b; z) with the default configuration.
pub fn hyp1f1(a: Complex64, b: Complex64, z: Complex64) -> Result<SpecialEvalReport> {
    hyp1f1_with(a, b, z, &Hyp1f1Config::default())
}

/// ₁F₁(a; b; z) for real parameters and argument.
pub fn hyp1f1_real(a: f64, b: f64, x: f64) -> Result<f64> {
    hyp1f1(a.into(), b.into(), x.into()).map(|r| r.value.re)
}

/// ₁F₁(a; b; z) with explicit switch points.
pub fn hyp1f1_with(
    a: Complex64,
    b: Complex64,
    z: Complex64,
    cfg: &Hyp1f1Config,
) -> Result<SpecialEvalReport> {
    check_args(a, b, z)?;
    if z == Complex64::new(0.0, 0.0) {
        return Ok(SpecialEvalReport {
            value: Complex64::new(1.0, 0.0),
            regime: Regime::MaclaurinSeries,
            est_rel_err: 0.0,
            terms_used: 1,
            extended_precision: false,
            near_stokes_line: false,
        });
    }

    let terminating = is_nonpositive_integer(a);
    let report = if terminating || z.norm() <= cfg.asymptotic_threshold {
        if z.re < cfg.kummer_re_threshold && !terminating {
            let inner = maclaurin(b - a, b, -z, cfg.max_series_terms)?;
            SpecialEvalReport {
                value: z.exp() * inner.value,
                regime: Regime::KummerTransform,
                est_rel_err: inner.est_rel_err + 2.0 * EPS * (1.0 + z.norm()),
                ..inner
            }
        } else {
            maclaurin(a, b, z, cfg.max_series_terms)?
        }
    } else {
        let asym = asymptotic(a, b, z, cfg.max_asymptotic_terms)?;
        if asym.est_rel_err <= cfg.target_rel_err || z.norm() > 2.0 * cfg.asymptotic_threshold {
            asym
        } else {
            // moderately large |z| with parameters that defeat the expansion
            let series = if z.re < 0.0 {
                let inner = maclaurin(b - a, b, -z, cfg.max_series_terms)?;
                SpecialEvalReport {
                    value: z.exp() * inner.value,
                    regime: Regime::KummerTransform,
                    est_rel_err: inner.est_rel_err + 2.0 * EPS * (1.0 + z.norm()),
                    ..inner
                }
            } else {
                maclaurin(a, b, z, cfg.max_series_terms)?
            };
            if series.est_rel_err < asym.est_rel_err {
                series
            } else {
                asym
            }
        }
    };

    if !(report.value.re.is_finite() && report.value.im.is_finite()) {
        return Err(Error::Convergence {
            best_value: report.value,
            best_rel_err: f64::INFINITY,
        });
    }
    if report.est_rel_err > cfg.target_rel_err {
        return Err(Error::Convergence {
            best_value: report.value,
            best_rel_err: report.est_rel_err,
        });
    }
    Ok(report)
}

/// Two-branch asymptotic expansion of ₁F₁ for large `|z|` (default threshold 30).
///
/// ```text
/// ₁F₁(a;b;z) ~ Γ(b) [ e^z z^(a-b) / Γ(a)   Σ (1-a)_s (b-a)_s / s!  z^-s
///                   + (-z)^-a  / Γ(b-a) Σ (a)_s (a-b+1)_s / s! (-z)^-s ]
/// ```
///
/// with principal branches for both powers. Each branch is truncated at its
/// smallest term (at most `max_asymptotic_terms`); the error estimate is the
/// size of the first omitted term.
pub fn hyp1f1_asymptotic(a: Complex64, b: Complex64, z: Complex64) -> Result<SpecialEvalReport> {
    hyp1f1_asymptotic_with(a, b, z, &Hyp1f1Config::default())
}

pub fn hyp1f1_asymptotic_with(
    a: Complex64,
    b: Complex64,
    z: Complex64,
    cfg: &Hyp1f1Config,
) -> Result<SpecialEvalReport> {
    check_args(a, b, z)?;
    if z.norm() < cfg.asymptotic_threshold {
        return Err(Error::Domain(format!(
            "|z| = {} is below the asymptotic threshold {}",
            z.norm(),
            cfg.asymptotic_threshold
        )));
    }
    asymptotic(a, b, z, cfg.max_asymptotic_terms)
}

/// Sum `Σ (p)_s (q)_s / s! w^s` up to the smallest term.
/// Returns (sum, first omitted term magnitude, terms used).
fn truncated_asymptotic_sum(p: Complex64, q: Complex64, w: Complex64, cap: usize) -> (Complex64, f64, usize) {
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let mut used = 1;
    for s in 0..cap.max(1) {
        let next = term * (p + s as f64) * (q + s as f64) / (s as f64 + 1.0) * w;
        if next.norm() == 0.0 {
            return (sum, 0.0, used);
        }
        if next.norm() >= term.norm() || used == cap {
            // smallest term reached (or cap): `next` is the first omitted term
            return (sum, next.norm(), used);
        }
        sum += next;
        term = next;
        used += 1;
    }
    (sum, term.norm(), used)
}

fn asymptotic(a: Complex64, b: Complex64, z: Complex64, cap: usize) -> Result<SpecialEvalReport> {
    let one = Complex64::new(1.0, 0.0);
    let gb = gamma(b)?;
    let minus_z = -z;

    let ra = rgamma(a);
    let rba = rgamma(b - a);

    let (s1, e1, n1) = truncated_asymptotic_sum(one - a, b - a, one / z, cap);
    let (s2, e2, n2) = truncated_asymptotic_sum(a, a - b + 1.0, one / minus_z, cap);

    // e^z z^(a-b), combined in the exponent to avoid intermediate overflow
    let p1 = if ra == Complex64::new(0.0, 0.0) {
        Complex64::new(0.0, 0.0)
    } else {
        (z + (a - b) * z.ln()).exp() * ra
    };
    let p2 = if rba == Complex64::new(0.0, 0.0) {
        Complex64::new(0.0, 0.0)
    } else {
        (-a * minus_z.ln()).exp() * rba
    };

    let value = gb * (p1 * s1 + p2 * s2);
    let abs_err = gb.norm() * (p1.norm() * e1 + p2.norm() * e2);
    let scale = gb.norm() * (p1.norm() * s1.norm() + p2.norm() * s2.norm());
    let est_rel_err = if value.norm() > 0.0 {
        abs_err / value.norm() + 8.0 * EPS * scale / value.norm()
    } else {
        f64::INFINITY
    };
    let n1 = if p1.norm() == 0.0 { 0 } else { n1 };
    let n2 = if p2.norm() == 0.0 { 0 } else { n2 };
    Ok(SpecialEvalReport {
        value,
        regime: Regime::AsymptoticExpansion,
        est_rel_err,
        terms_used: (n1 + n2).max(1),
        extended_precision: false,
        near_stokes_line: minus_z.arg().abs() > 0.75 * PI,
    })
}

/// Convergence test: three consecutive terms below 1e-17 of the partial sum.
struct StopRule {
    small_run: usize,
}

impl StopRule {
    fn new() -> Self {
        StopRule { small_run: 0 }
    }

    fn done(&mut self, term: f64, sum: f64) -> bool {
        if term <= 1e-17 * sum {
            self.small_run += 1;
        } else {
            self.small_run = 0;
        }
        self.small_run >= 3
    }
}

fn maclaurin(a: Complex64, b: Complex64, z: Complex64, max_terms: usize) -> Result<SpecialEvalReport> {
    let (value, abssum, terms, converged) = maclaurin_f64(a, b, z, max_terms);
    let mut est = if value.norm() > 0.0 {
        4.0 * EPS * abssum / value.norm()
    } else {
        f64::INFINITY
    };
    if !converged {
        return Err(Error::Convergence {
            best_value: value,
            best_rel_err: f64::INFINITY,
        });
    }
    if est <= SERIES_DD_TRIGGER {
        return Ok(SpecialEvalReport {
            value,
            regime: Regime::MaclaurinSeries,
            est_rel_err: est,
            terms_used: terms,
            extended_precision: false,
            near_stokes_line: false,
        });
    }
    let (value, abssum, terms, converged) = maclaurin_dd(a, b, z, max_terms);
    if !converged {
        return Err(Error::Convergence {
            best_value: value,
            best_rel_err: f64::INFINITY,
        });
    }
    est = if value.norm() > 0.0 {
        4.0 * DD_EPS * abssum / value.norm() + EPS
    } else {
        f64::INFINITY
    };
    Ok(SpecialEvalReport {
        value,
        regime: Regime::MaclaurinSeries,
        est_rel_err: est,
        terms_used: terms,
        extended_precision: true,
        near_stokes_line: false,
    })
}

fn maclaurin_f64(a: Complex64, b: Complex64, z: Complex64, max_terms: usize) -> (Complex64, f64, usize, bool) {
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let mut abssum = 1.0;
    let mut stop = StopRule::new();
    for k in 0..max_terms {
        let kf = k as f64;
        term = term * (a + kf) / (b + kf) * z / (kf + 1.0);
        sum += term;
        let t = term.norm();
        abssum += t;
        if t == 0.0 || stop.done(t, sum.norm()) {
            return (sum, abssum, k + 2, true);
        }
    }
    (sum, abssum, max_terms + 1, false)
}

fn maclaurin_dd(a: Complex64, b: Complex64, z: Complex64, max_terms: usize) -> (Complex64, f64, usize, bool) {
    let zd = ComplexDd::from_c64(z);
    let ad = ComplexDd::from_c64(a);
    let bd = ComplexDd::from_c64(b);
    let mut term = ComplexDd::from_c64(Complex64::new(1.0, 0.0));
    let mut sum = term;
    let mut abssum = 1.0;
    let mut stop = StopRule::new();
    for k in 0..max_terms {
        let kd = ComplexDd {
            re: Dd::from_f64(k as f64),
            im: Dd::ZERO,
        };
        let num = (ad + kd) * zd;
        let den = (bd + kd).scale(Dd::from_f64(k as f64 + 1.0));
        term = term * num / den;
        sum = sum + term;
        let t = term.norm_f64();
        abssum += t;
        if t == 0.0 || stop.done(t, sum.norm_f64()) {
            return (sum.to_c64(), abssum, k + 2, true);
        }
    }
    (sum.to_c64(), abssum, max_terms + 1, false)
}
