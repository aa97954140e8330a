use super::IntegrandValue;
use crate::error::{Error, Result};

/// Central difference of order 1 or 2 from equally spaced samples centred on
/// the evaluation point. Three samples give O(h²) truncation, five give O(h⁴).
pub fn finite_difference<T: IntegrandValue>(fvals: &[T], order: u8, h: f64) -> Result<T> {
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::Stencil(format!("step must be positive, got {h}")));
    }
    match (fvals.len(), order) {
        (3, 1) => Ok((fvals[2] - fvals[0]) * (0.5 / h)),
        (3, 2) => Ok((fvals[0] + fvals[2] - fvals[1] * 2.0) * (1.0 / (h * h))),
        (5, 1) => Ok((fvals[0] - fvals[4] + (fvals[3] - fvals[1]) * 8.0) * (1.0 / (12.0 * h))),
        (5, 2) => Ok(
            ((fvals[1] + fvals[3]) * 16.0 - (fvals[0] + fvals[4]) - fvals[2] * 30.0) * (1.0 / (12.0 * h * h)),
        ),
        (n, o) if o == 1 || o == 2 => Err(Error::Stencil(format!(
            "need 3 or 5 central samples, got {n}"
        ))),
        (_, o) => Err(Error::Stencil(format!("derivative order {o} not supported"))),
    }
}

/// Sample `f` on a central stencil of `points` (3 or 5) and differentiate.
pub fn central_derivative<T, F>(f: F, x: f64, h: f64, order: u8, points: usize) -> Result<T>
where
    T: IntegrandValue,
    F: Fn(f64) -> Result<T>,
{
    let half = match points {
        3 => 1,
        5 => 2,
        n => return Err(Error::Stencil(format!("stencil of {n} points not supported"))),
    };
    let vals = (-half..=half)
        .map(|j| f(x + j as f64 * h))
        .collect::<Result<Vec<T>>>()?;
    finite_difference(&vals, order, h)
}

/// Combine estimates at steps `h` and `2h` whose leading error is `O(h^p)`.
pub fn richardson<T: IntegrandValue>(fine: T, coarse: T, p: i32) -> T {
    let r = 2f64.powi(p);
    (fine * r - coarse) * (1.0 / (r - 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_second_derivative() {
        let h = 0.1;
        let v: Vec<f64> = [-h, 0.0, h].iter().map(|t| t * t).collect();
        assert!((finite_difference(&v, 2, h).unwrap() - 2.0).abs() < 1e-8);
        assert!(finite_difference(&v, 1, h).unwrap().abs() < 1e-8);
    }

    #[test]
    fn sine_first_derivative() {
        let h = 1e-4;
        let v: Vec<f64> = [-h, 0.0, h].iter().map(|t: &f64| t.sin()).collect();
        assert!((finite_difference(&v, 1, h).unwrap() - 1.0).abs() < 1e-8);
    }

    #[test]
    fn five_point_is_fourth_order() {
        let f = |x: f64| Ok(x.exp());
        let e1 = (central_derivative(f, 0.0, 0.1, 1, 5).unwrap() - 1.0f64).abs();
        let e2 = (central_derivative(f, 0.0, 0.05, 1, 5).unwrap() - 1.0f64).abs();
        assert!((e1 / e2 - 16.0).abs() < 0.5);
        let d2 = central_derivative(f, 0.0, 1e-2, 2, 5).unwrap();
        assert!((d2 - 1.0f64).abs() < 1e-8);
    }

    #[test]
    fn richardson_improves_three_point() {
        let f = |x: f64| Ok(x.sin());
        let fine: f64 = central_derivative(f, 0.3, 0.01, 1, 3).unwrap();
        let coarse: f64 = central_derivative(f, 0.3, 0.02, 1, 3).unwrap();
        let r = richardson(fine, coarse, 2);
        assert!((r - 0.3f64.cos()).abs() < 1e-9);
    }

    #[test]
    fn bad_stencils() {
        assert!(matches!(finite_difference(&[1.0, 2.0], 1, 0.1), Err(Error::Stencil(_))));
        assert!(matches!(finite_difference(&[1.0, 2.0, 3.0], 3, 0.1), Err(Error::Stencil(_))));
        assert!(matches!(finite_difference(&[1.0, 2.0, 3.0], 1, 0.0), Err(Error::Stencil(_))));
    }
}
