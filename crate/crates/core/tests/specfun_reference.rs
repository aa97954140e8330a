//! ₁F₁ against 30-digit reference values and the algebraic identities it must satisfy.

use num_complex::Complex64;
use proptest::prelude::*;
use std::f64::consts::PI;
use toa_core::specfun::{gamma, gamma_real, hyp1f1, hyp1f1_asymptotic, log_gamma, Regime};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm()
}

type Reference = (f64, f64, (f64, f64), (f64, f64));

/// (a, b, z, 1F1) from a 30-digit evaluation.
const REFERENCE: &[Reference] = &[
    (0.75, 0.5, (-100.0, 0.0), (-0.011_544_245_777_269_839, 0.0)),
    (0.75, 0.5, (-1e4, 0.0), (-0.000_361_636_178_047_033_9, 0.0)),
    (1.25, 1.5, (-1e4, 0.0), (2.444_581_871_808_932e-6, 0.0)),
    (0.75, 0.5, (0.0, -25.0), (3.112_438_949_287_111, -0.808_927_095_510_704)),
    (0.75, 0.5, (-5.0, -25.0), (0.005_382_767_941_240_411, 0.021_330_032_958_544_482)),
    (1.25, 1.5, (3.0, -28.0), (-6.848_040_204_857_082_5, -5.080_553_838_800_565)),
    (0.75, 0.5, (-20.0, 15.0), (-0.029_140_723_604_819_93, -0.016_206_424_761_257_894)),
    (0.75, 0.5, (0.5, -0.3), (1.880_018_084_566_783_5, -0.784_775_569_712_717_7)),
    (1.25, 1.5, (-28.0, -1.0), (0.003_924_673_088_699_751, -0.000_180_546_873_853_448_2)),
    (0.75, 0.5, (-1.0, -400.0), (-0.379_686_549_831_542_65, 2.353_144_574_250_816_6)),
    (1.25, 1.5, (40.0, -300.0), (-2.054_063_407_892_358_8e16, 5.121_067_544_148_493e16)),
    (0.75, 0.5, (25.0, 0.0), (232_289_459_711.542_24, 0.0)),
    (-0.25, 0.5, (12.0, -7.0), (-8_359.103_428_700_198, 2_392.526_189_206_950_7)),
    (1.75, 2.5, (-8.0, -8.0), (0.002_673_796_768_601_221_3, -0.015_738_837_582_519_67)),
    (0.75, 0.5, (-3.0, -1e6), (2.275_824_311_465_645_3, -0.079_985_252_785_810_06)),
];

#[test]
fn matches_reference_values() {
    for &(a, b, (zr, zi), (fr, fi)) in REFERENCE {
        let r = hyp1f1(c(a, 0.0), c(b, 0.0), c(zr, zi)).unwrap();
        let err = rel(r.value, c(fr, fi));
        assert!(err < 1e-10, "1F1({a};{b};{zr}+{zi}i): rel err {err:e} ({:?})", r.regime);
        assert!(r.est_rel_err <= 1e-10);
    }
}

#[test]
fn kummer_example_at_minus_hundred() {
    let a = c(0.75, 0.0);
    let b = c(0.5, 0.0);
    let z = c(-100.0, 0.0);
    let direct = hyp1f1(a, b, z).unwrap().value;
    let transformed = z.exp() * hyp1f1(b - a, b, -z).unwrap().value;
    assert!(rel(direct, transformed) <= 1e-10);
}

#[test]
fn subdominant_branch_at_u_ten() {
    // e^z is negligible at z = -100: only Γ(b)/Γ(b-a) (-z)^-a survives
    let value = hyp1f1(c(0.75, 0.0), c(0.5, 0.0), c(-100.0, 0.0)).unwrap().value.re;
    let leading = gamma_real(0.5).unwrap() / gamma_real(-0.25).unwrap() * 10f64.powf(-1.5);
    assert!(((value - leading) / value).abs() < 0.02);
}

#[test]
fn asymptotic_agrees_with_dispatcher_at_minus_ten_thousand() {
    for (a, b) in [(0.75, 0.5), (1.25, 1.5)] {
        let z = c(-1e4, 0.0);
        let asym = hyp1f1_asymptotic(c(a, 0.0), c(b, 0.0), z).unwrap();
        let full = hyp1f1(c(a, 0.0), c(b, 0.0), z).unwrap();
        assert_eq!(asym.regime, Regime::AsymptoticExpansion);
        assert!(rel(asym.value, full.value) < 1e-6);
    }
}

#[test]
fn log_gamma_reproduces_gamma() {
    for &(re, im) in &[(0.1, 0.0), (2.5, 7.0), (-3.3, 4.0), (15.0, -9.0), (-19.5, 0.1), (0.25, 0.0)] {
        let z = c(re, im);
        let g = gamma(z).unwrap();
        let eg = log_gamma(z).unwrap().exp();
        assert!(rel(eg, g) < 1e-12, "z = {z}");
    }
}

fn param_family() -> impl Strategy<Value = (f64, f64)> {
    prop_oneof![Just((0.75, 0.5)), Just((1.25, 1.5)), Just((1.75, 2.5)), (0.1f64..3.0, 0.6f64..3.0)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn kummer_transformation(
        (a, b) in param_family(),
        r in 0.0f64..200.0,
        theta in -PI..PI,
    ) {
        let z = Complex64::from_polar(r, theta);
        let a = c(a, 0.0);
        let b = c(b, 0.0);
        let lhs = hyp1f1(a, b, z).unwrap().value;
        let rhs = z.exp() * hyp1f1(b - a, b, -z).unwrap().value;
        prop_assert!(rel(rhs, lhs) <= 1e-9, "z = {z}: {lhs} vs {rhs}");
    }

    #[test]
    fn contiguous_relation(
        (a, b) in param_family(),
        r in 0.0f64..60.0,
        theta in -PI..PI,
    ) {
        // b F(a;b;z) - b F(a-1;b;z) - z F(a;b+1;z) = 0
        let z = Complex64::from_polar(r, theta);
        let a = c(a, 0.0);
        let b = c(b, 0.0);
        let f = hyp1f1(a, b, z).unwrap().value;
        let fm = hyp1f1(a - 1.0, b, z).unwrap().value;
        let fb = hyp1f1(a, b + 1.0, z).unwrap().value;
        let residual = b * f - b * fm - z * fb;
        let scale = (b * f).norm() + (b * fm).norm() + (z * fb).norm();
        prop_assert!(residual.norm() <= 1e-9 * scale, "z = {z}: residual {residual}");
    }

    #[test]
    fn derivative_matches_central_difference(
        (a, b) in param_family(),
        r in 0.5f64..25.0,
        theta in -PI..PI,
    ) {
        let z = Complex64::from_polar(r, theta);
        let a = c(a, 0.0);
        let b = c(b, 0.0);
        let h = 1e-3;
        let f = |w: Complex64| hyp1f1(a, b, w).unwrap().value;
        // five-point stencil along the real direction
        let fd = (-f(z + 2.0 * h) + 8.0 * f(z + h) - 8.0 * f(z - h) + f(z - 2.0 * h)) / (12.0 * h);
        let exact = a / b * hyp1f1(a + 1.0, b + 1.0, z).unwrap().value;
        prop_assert!(rel(fd, exact) <= 1e-6, "z = {z}: {fd} vs {exact}");
    }

    #[test]
    fn gamma_reflection(re in -10.0f64..10.0, im in -3.0f64..3.0) {
        let z = c(re, im);
        prop_assume!(im.abs() > 1e-3 || (re - re.round()).abs() > 1e-3);
        prop_assume!(z.norm() <= 10.0);
        let product = gamma(z).unwrap() * gamma(1.0 - z).unwrap() * (z * std::f64::consts::PI).sin()
            / std::f64::consts::PI;
        prop_assert!((product - 1.0).norm() <= 1e-10, "z = {z}: {product}");
    }
}
