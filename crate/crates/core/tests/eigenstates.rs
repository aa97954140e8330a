#![allow(clippy::excessive_precision)]

use num_complex::Complex64;
use proptest::prelude::*;
use toa_core::eigenstates::{
    asymptotic_crossover, collapse_density, evolved_density, varphi_asymptotic, varphi_evolved, varphi_momentum,
    varphi_position,
};
use toa_core::quadrature::{integrate_semi_infinite, integrate_with_breaks, TailModel};
use toa_core::specfun::gamma_real;
use toa_core::{Eigenvalue, IntervalSpec, ParityIndex, PhysicalParams, SpacetimePoint, Tolerance};

const PARITIES: [ParityIndex; 2] = [ParityIndex::EVEN, ParityIndex::ODD];

type Row = (f64, f64, f64, f64, f64, (f64, f64), (f64, f64));

/// `(2πħ)^-1/2 ∫ e^{ipq/ħ} φ(p) dp` by 30-digit quadrature along the rays
/// `p = ±r e^{iθ}` with `θ = (π/2 - arg τ)/2`, where the integrand is Gaussian:
/// (μ, ħ, τ_R, τ_I, q, n=0 value, n=1 value).
const INVERSE_TRANSFORM: &[Row] = &[
    (1.0, 1.0, 0.5, 0.01, 1.3, (0.10180076587461484, -0.17159016532696284), (-0.11802450641920469, 0.20782414657975129)),
    (2.0, 0.7, -0.3, 0.2, 0.9, (-0.4239807237690612, 0.16022401301408239), (-0.31530199008963713, 0.36154110816919988)),
    (1.0, 1.0, 0.5, 0.05, 2.5, (0.24471164758628555, 0.26851627686259878), (-0.26825576527166664, -0.23702577362732128)),
];

#[test]
fn position_form_is_the_inverse_fourier_transform() {
    for &(mu, hbar, tr, ti, q, v0, v1) in INVERSE_TRANSFORM {
        let pp = PhysicalParams::new(mu, hbar).unwrap();
        let tau = Eigenvalue::new(tr, ti).unwrap();
        for (n, (re, im)) in PARITIES.into_iter().zip([v0, v1]) {
            let v = varphi_position(q, tau, n, pp).unwrap();
            let expected = Complex64::new(re, im);
            assert!((v - expected).norm() < 1e-12 * expected.norm(), "{n:?} {tau:?} {q}: {v}");
        }
    }
}

#[test]
fn position_form_matches_direct_quadrature() {
    // the same transform computed here from the momentum form
    let pp = PhysicalParams::default();
    let tau = Eigenvalue::new(0.2, 0.3).unwrap();
    let q = 0.8;
    for n in PARITIES {
        let tol = Tolerance {
            abs_tol: 1e-13,
            rel_tol: 1e-12,
            ..Tolerance::default()
        };
        let f = |p: f64| {
            varphi_momentum(p, tau, n, pp).map(|v| Complex64::new(0.0, p * q / pp.hbar).exp() * v)
        };
        let p_max = (60.0 / tau.tau_i).sqrt();
        let r = integrate_with_breaks(f, IntervalSpec::new(-p_max, p_max).unwrap(), &[-1.0, 1.0], tol).unwrap();
        let direct = r.value / (2.0 * std::f64::consts::PI * pp.hbar).sqrt();
        let closed = varphi_position(q, tau, n, pp).unwrap();
        assert!((direct - closed).norm() < 1e-10, "{n:?}: {direct} vs {closed}");
    }
}

#[test]
fn origin_values() {
    let pp = PhysicalParams::default();
    let tau = Eigenvalue::new(0.5, 0.01).unwrap();
    let abs_tau = tau.as_complex().norm();
    let v = varphi_position(0.0, tau, ParityIndex::EVEN, pp).unwrap();
    let g = gamma_real(0.25).unwrap();
    let c0 = (8.0 * tau.tau_i * std::f64::consts::PI / abs_tau).sqrt() / g * (1.0 / (8.0 * abs_tau)).powf(0.25);
    assert!((v.norm() - c0).abs() < 1e-14);
    assert_eq!(varphi_position(0.0, tau, ParityIndex::ODD, pp).unwrap().norm(), 0.0);
}

#[test]
fn evolution_at_zero_time_is_the_initial_state() {
    let pp = PhysicalParams::default();
    let tau = Eigenvalue::new(0.5, 0.01).unwrap();
    for n in PARITIES {
        for q in [-3.0, -0.2, 0.0, 0.4, 7.5] {
            let a = varphi_evolved(SpacetimePoint::new(q, 0.0).unwrap(), tau, n, pp).unwrap();
            assert_eq!(a, varphi_position(q, tau, n, pp).unwrap());
        }
    }
}

#[test]
fn density_at_collapse_is_the_collapse_density() {
    let pp = PhysicalParams::new(1.3, 0.9).unwrap();
    for (tr, ti) in [(0.5, 0.01), (0.5, 0.005), (2.0, 0.3)] {
        let tau = Eigenvalue::new(tr, ti).unwrap();
        for n in PARITIES {
            for k in 0..60 {
                let q = -3.0 + 0.1 * k as f64;
                let a = evolved_density(SpacetimePoint::new(q, tr).unwrap(), tau, n, pp).unwrap();
                let b = collapse_density(q, tau, n, pp).unwrap();
                assert!((a - b).abs() <= 1e-12 * b.max(1.0), "{q} {n:?}: {a} vs {b}");
            }
        }
    }
}

#[test]
fn collapse_density_integrates_to_one_half_on_the_half_line() {
    let pp = PhysicalParams::default();
    let tau = Eigenvalue::new(0.5, 0.01).unwrap();
    let tol = Tolerance::default();
    for n in PARITIES {
        let r = integrate_semi_infinite(
            |q: f64| collapse_density(q, tau, n, pp),
            0.0,
            TailModel::fitted(3.0, 2.0),
            &[0.05, 0.14, 0.5],
            tol,
        )
        .unwrap();
        assert!((r.value - 0.5).abs() < 1e-8, "{n:?}: {}", r.value);
    }
}

#[test]
fn collapse_density_is_tau_i_scale_free_in_u() {
    // √(2ħτ_I/μ) ρ(u √(2ħτ_I/μ)) depends on u only
    let pp = PhysicalParams::default();
    for n in PARITIES {
        for u in [0.0, 0.3, 1.1, 4.0] {
            let vals: Vec<f64> = [0.1, 0.01, 0.001]
                .iter()
                .map(|&ti: &f64| {
                    let s = (2.0 * ti).sqrt();
                    s * collapse_density(u * s, Eigenvalue::new(0.5, ti).unwrap(), n, pp).unwrap()
                })
                .collect();
            for v in &vals[1..] {
                assert!((v - vals[0]).abs() <= 1e-12 * vals[0].max(1e-300), "{n:?} u={u}");
            }
        }
    }
}

#[test]
fn asymptotic_tail_agrees_with_full_evaluation() {
    let pp = PhysicalParams::default();
    let tau = Eigenvalue::new(0.5, 0.01).unwrap();
    for n in PARITIES {
        let qs = asymptotic_crossover(tau, n, pp).unwrap();
        assert!(qs > 0.0);
        for q in [qs, 2.0 * qs, 10.0 * qs, -3.0 * qs] {
            let a = varphi_asymptotic(q, tau, n, pp).unwrap();
            let f = varphi_position(q, tau, n, pp).unwrap();
            assert!((a.value - f).norm() <= 1.01e-3 * f.norm());
            assert!(a.normalizable);
            assert_eq!(a.crossover, qs);
        }
    }
}

#[test]
fn crossover_is_shared_across_threads() {
    let pp = PhysicalParams::default();
    let tau = Eigenvalue::new(0.7, 0.02).unwrap();
    let handles: Vec<_> = (0..8)
        .map(|_| std::thread::spawn(move || asymptotic_crossover(tau, ParityIndex::ODD, pp).unwrap()))
        .collect();
    let values: Vec<f64> = handles.into_iter().map(|h| h.join().unwrap()).collect();
    assert!(values.iter().all(|&v| v == values[0]));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn parity_is_exact(q in -50.0f64..50.0, t in -2.0f64..2.0, tr in -1.0f64..1.0, ti in 1e-3f64..2.0, odd in any::<bool>()) {
        let n = if odd { ParityIndex::ODD } else { ParityIndex::EVEN };
        let tau = Eigenvalue::new(tr, ti).unwrap();
        let pp = PhysicalParams::default();
        let a = varphi_evolved(SpacetimePoint::new(q, t).unwrap(), tau, n, pp).unwrap();
        let b = varphi_evolved(SpacetimePoint::new(-q, t).unwrap(), tau, n, pp).unwrap();
        prop_assert_eq!(a, b * n.sign());
    }

    #[test]
    fn covariance_under_time_translation(q in -20.0f64..20.0, t in -2.0f64..2.0, tr in -1.0f64..1.0, ti in 1e-3f64..2.0) {
        let tau = Eigenvalue::new(tr, ti).unwrap();
        let pp = PhysicalParams::new(0.7, 1.4).unwrap();
        for n in PARITIES {
            let a = varphi_evolved(SpacetimePoint::new(q, t).unwrap(), tau, n, pp).unwrap();
            let b = varphi_evolved(SpacetimePoint::new(q, 0.0).unwrap(), tau.shifted(t), n, pp).unwrap();
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn density_is_symmetric_about_collapse_time(q in -10.0f64..10.0, dt in 0.0f64..1.0, ti in 1e-3f64..1.0) {
        let tau = Eigenvalue::new(0.5, ti).unwrap();
        let pp = PhysicalParams::default();
        for n in PARITIES {
            let a = evolved_density(SpacetimePoint::new(q, 0.5 + dt).unwrap(), tau, n, pp).unwrap();
            let b = evolved_density(SpacetimePoint::new(q, 0.5 - dt).unwrap(), tau, n, pp).unwrap();
            prop_assert!((a - b).abs() <= 1e-12 * a.max(b).max(1e-300));
        }
    }
}
