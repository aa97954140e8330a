use super::position::PositionKernel;
use super::{Eigenvalue, ParityIndex, PhysicalParams};
use crate::error::{Error, Result};
use crate::specfun::{gamma_real, hyp1f1};
use num_complex::Complex64;
use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

/// Large-`|q|` value of the position eigenfunction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticEval {
    pub value: Complex64,
    /// Smallest `|q|` where the two-term form agrees with the full
    /// evaluation to `1e-3` relative.
    pub crossover: f64,
    /// `false` for a real eigenvalue: the `√τ_I` factor is dropped and the
    /// oscillating branch grows like `|q|^(1/2)`.
    pub normalizable: bool,
}

const CROSSOVER_REL_TOL: f64 = 1e-3;
const SCAN_W_MIN: f64 = 1.0;
const SCAN_W_MAX: f64 = 1e4;
const SCAN_RATIO: f64 = 1.05;

type Key = (u64, u64, u8, u64, u64);

fn cache() -> &'static RwLock<HashMap<Key, f64>> {
    static CACHE: OnceLock<RwLock<HashMap<Key, f64>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Both branches of the ₁F₁ expansion, two terms each.
fn two_term(a: f64, b: f64, z: Complex64) -> Result<Complex64> {
    let gb = gamma_real(b)?;
    let exp_branch = z.exp() * z.powc(Complex64::new(a - b, 0.0)) / gamma_real(a)?
        * (1.0 + (a - 1.0) * (a - b) / z);
    let alg_branch = (-z).powc(Complex64::new(-a, 0.0)) / gamma_real(b - a)? * (1.0 - a * (a - b + 1.0) / z);
    Ok((exp_branch + alg_branch) * gb)
}

fn agreement(kernel: &PositionKernel, w: f64) -> Result<f64> {
    let x2 = w / kernel.zscale.norm();
    let z = kernel.zscale * x2;
    let full = hyp1f1(kernel.a.into(), kernel.b.into(), z)?.value;
    let approx = two_term(kernel.a, kernel.b, z)?;
    Ok((approx - full).norm() / full.norm())
}

fn scan_crossover(kernel: &PositionKernel) -> Result<f64> {
    let mut grid = vec![SCAN_W_MIN];
    while *grid.last().unwrap() < SCAN_W_MAX {
        grid.push(grid.last().unwrap() * SCAN_RATIO);
    }
    let mut last_fail = None;
    for (j, &w) in grid.iter().enumerate() {
        if agreement(kernel, w)? > CROSSOVER_REL_TOL {
            last_fail = Some(j);
        }
    }
    let w_star = match last_fail {
        None => SCAN_W_MIN,
        Some(j) if j + 1 == grid.len() => {
            return Err(Error::Domain("asymptotic form never reaches 1e-3 agreement".into()));
        }
        Some(j) => {
            let (mut lo, mut hi) = (grid[j], grid[j + 1]);
            for _ in 0..50 {
                let mid = (lo * hi).sqrt();
                if agreement(kernel, mid)? > CROSSOVER_REL_TOL {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            hi
        }
    };
    Ok((w_star / kernel.zscale.norm()).sqrt())
}

/// Crossover `q*` for `(τ, n)`, computed once and cached.
pub fn asymptotic_crossover(tau: Eigenvalue, n: ParityIndex, params: PhysicalParams) -> Result<f64> {
    if tau.tau_i < 0.0 {
        return Err(Error::Normalizability { tau_i: tau.tau_i });
    }
    let key = (
        tau.tau_r.to_bits(),
        tau.tau_i.to_bits(),
        n.n() as u8,
        params.mu.to_bits(),
        params.hbar.to_bits(),
    );
    if let Some(&q) = cache().read().unwrap_or_else(|e| e.into_inner()).get(&key) {
        return Ok(q);
    }
    let kernel = PositionKernel::new(tau, n, params, false)?;
    let q = scan_crossover(&kernel)?;
    cache().write().unwrap_or_else(|e| e.into_inner()).entry(key).or_insert(q);
    Ok(q)
}

/// Leading large-`|q|` behaviour of the position eigenfunction:
///
/// ```text
/// ₁F₁(a;b;z) ≈ Γ(b) [ e^z z^(a-b)/Γ(a) (1 + (a-1)(a-b)/z)
///                   + (-z)^-a/Γ(b-a) (1 - a(a-b+1)/z) ]
/// ```
///
/// with the same prefactor and phase as [`varphi_position`](super::varphi_position).
/// For `τ_I > 0` the first branch is a Gaussian and the value decays like
/// `|q|^(-3/2)`. `τ_I = 0` is accepted and reported as not normalizable.
pub fn varphi_asymptotic(q: f64, tau: Eigenvalue, n: ParityIndex, params: PhysicalParams) -> Result<AsymptoticEval> {
    if tau.tau_i < 0.0 {
        return Err(Error::Normalizability { tau_i: tau.tau_i });
    }
    if !q.is_finite() {
        return Err(Error::Domain(format!("position {q} is not finite")));
    }
    let crossover = asymptotic_crossover(tau, n, params)?;
    if q.abs() < crossover {
        return Err(Error::Domain(format!(
            "|q| = {} is below the asymptotic crossover {crossover}",
            q.abs()
        )));
    }
    let normalizable = tau.is_normalizable();
    let kernel = PositionKernel::new(tau, n, params, normalizable)?;
    let x = q.abs();
    let mut value = kernel.prefactor * two_term(kernel.a, kernel.b, kernel.zscale * (x * x))?;
    if n == ParityIndex::ODD {
        value *= q;
    }
    Ok(AsymptoticEval {
        value,
        crossover,
        normalizable,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eigenstates::varphi_position;

    #[test]
    fn below_crossover_is_rejected() {
        let tau = Eigenvalue::new(0.5, 0.01).unwrap();
        let e = varphi_asymptotic(0.1, tau, ParityIndex::EVEN, PhysicalParams::default()).unwrap_err();
        assert!(matches!(e, Error::Domain(_)));
    }

    #[test]
    fn agrees_beyond_crossover() {
        let pp = PhysicalParams::default();
        for (tau_r, tau_i) in [(0.5, 0.01), (0.5, 0.05), (1.0, 1.0)] {
            let tau = Eigenvalue::new(tau_r, tau_i).unwrap();
            for n in [ParityIndex::EVEN, ParityIndex::ODD] {
                let qs = asymptotic_crossover(tau, n, pp).unwrap();
                for f in [1.0, 1.3, 2.0, 5.0, 20.0] {
                    let q = qs * f;
                    let a = varphi_asymptotic(q, tau, n, pp).unwrap().value;
                    let full = varphi_position(q, tau, n, pp).unwrap();
                    assert!((a - full).norm() <= 1.01e-3 * full.norm(), "{tau_r} {tau_i} {n:?} {q}");
                }
            }
        }
    }

    #[test]
    fn printed_constant_matches_reciprocal_gamma() {
        // 4/((2n-1) Γ(n/2 - 1/4)) = 1/Γ(3/4 + n/2)
        for n in [0.0, 1.0] {
            let printed = 4.0 / ((2.0 * n - 1.0) * gamma_real(0.5 * n - 0.25).unwrap());
            let direct = 1.0 / gamma_real(0.75 + 0.5 * n).unwrap();
            assert!((printed - direct).abs() < 1e-14);
        }
    }

    #[test]
    fn real_eigenvalue_grows() {
        let tau = Eigenvalue::new(0.5, 0.0).unwrap();
        let pp = PhysicalParams::default();
        let qs = asymptotic_crossover(tau, ParityIndex::EVEN, pp).unwrap();
        let a = varphi_asymptotic(4.0 * qs, tau, ParityIndex::EVEN, pp).unwrap();
        let b = varphi_asymptotic(16.0 * qs, tau, ParityIndex::EVEN, pp).unwrap();
        assert!(!a.normalizable);
        // |q|^(1/2) growth up to the algebraic branch and corrections
        assert!((b.value.norm() / a.value.norm() - 2.0).abs() < 0.05);
    }

    #[test]
    fn decays_like_inverse_three_halves() {
        let tau = Eigenvalue::new(0.5, 0.05).unwrap();
        let pp = PhysicalParams::default();
        let a = varphi_asymptotic(100.0, tau, ParityIndex::ODD, pp).unwrap().value.norm();
        let b = varphi_asymptotic(400.0, tau, ParityIndex::ODD, pp).unwrap().value.norm();
        assert!((a / b - 8.0).abs() < 1e-3);
    }
}
