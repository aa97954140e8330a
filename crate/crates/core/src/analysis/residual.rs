use crate::eigenstates::{ab_operator_apply, varphi_evolved, varphi_momentum, Eigenvalue, ParityIndex, PhysicalParams, SpacetimePoint};
use crate::error::{Error, Result};
use crate::quadrature::central_derivative;
use num_complex::Complex64;

fn relative(residual: Complex64, scale: f64) -> f64 {
    if scale == 0.0 {
        if residual.norm() == 0.0 {
            0.0
        } else {
            f64::INFINITY
        }
    } else {
        residual.norm() / scale
    }
}

/// `|iħ∂_tφ + (ħ²/2μ)∂²_qφ| / (|iħ∂_tφ| + |(ħ²/2μ)∂²_qφ|)` with five-point
/// central differences of step `h` in both `q` and `t`.
pub fn schrodinger_residual(
    x: SpacetimePoint,
    tau: Eigenvalue,
    n: ParityIndex,
    params: PhysicalParams,
    h: f64,
) -> Result<f64> {
    let phi_t = central_derivative(|t: f64| varphi_evolved(SpacetimePoint { q: x.q, t }, tau, n, params), x.t, h, 1, 5)?;
    let phi_qq = central_derivative(|q: f64| varphi_evolved(SpacetimePoint { q, t: x.t }, tau, n, params), x.q, h, 2, 5)?;
    let kinetic = phi_qq * (params.hbar * params.hbar / (2.0 * params.mu));
    let temporal = Complex64::new(0.0, params.hbar) * phi_t;
    Ok(relative(temporal + kinetic, temporal.norm() + kinetic.norm()))
}

/// `|Tφ - τφ| / |τφ|` in momentum space, with `∂_p` by a five-point central
/// difference of step `h`. `|p|` must exceed `2h`.
pub fn eigenvalue_residual(p: f64, tau: Eigenvalue, n: ParityIndex, params: PhysicalParams, h: f64) -> Result<f64> {
    if !(p.abs() > 2.0 * h) {
        return Err(Error::Domain(format!("stencil at p = {p} with step {h} reaches p = 0")));
    }
    let f = |p: f64| varphi_momentum(p, tau, n, params);
    let value = f(p)?;
    let derivative = central_derivative(f, p, h, 1, 5)?;
    let tphi = ab_operator_apply(p, value, derivative, params)?;
    let expected = tau.as_complex() * value;
    Ok(relative(tphi - expected, expected.norm()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eigenvalue_equation_holds() {
        let tau = Eigenvalue::new(0.5, 0.05).unwrap();
        for p in [-2.0, -0.3, 0.4, 1.5] {
            let r = eigenvalue_residual(p, tau, ParityIndex::ODD, PhysicalParams::default(), 1e-3).unwrap();
            assert!(r < 1e-6, "{p} {r}");
        }
    }

    #[test]
    fn schrodinger_holds_at_a_point() {
        let tau = Eigenvalue::new(0.5, 0.05).unwrap();
        let x = SpacetimePoint::new(0.7, 0.2).unwrap();
        let r = schrodinger_residual(x, tau, ParityIndex::EVEN, PhysicalParams::default(), 1e-3).unwrap();
        assert!(r < 1e-4, "{r}");
    }

    #[test]
    fn stencil_must_avoid_origin() {
        let tau = Eigenvalue::new(0.5, 0.05).unwrap();
        assert!(eigenvalue_residual(1e-3, tau, ParityIndex::EVEN, PhysicalParams::default(), 1e-3).is_err());
    }
}
