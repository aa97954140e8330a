use crate::eigenstates::{Eigenvalue, ParityIndex, PhysicalParams, PositionKernel};
use crate::error::{Error, Result};

/// Local maxima below this fraction of the global maximum are reported as
/// minor and not counted.
pub const PEAK_RELATIVE_THRESHOLD: f64 = 0.5;

/// Width at half maximum of `|φ(q, t)|²`.
///
/// For a twin-peaked density the width is the distance between the two
/// outermost half-maximum crossings.
#[derive(Debug, Clone, PartialEq)]
pub struct WhmResult {
    pub t: f64,
    pub whm: f64,
    pub peak_value: f64,
    /// One entry (`0`) or a symmetric pair.
    pub peak_positions: Vec<f64>,
}

/// Local maxima of `|φ(q, t)|²`.
#[derive(Debug, Clone, PartialEq)]
pub struct PeakCensus {
    pub count: usize,
    /// Maxima at or above `threshold × global maximum`, ascending.
    pub positions: Vec<f64>,
    pub values: Vec<f64>,
    /// Remaining strict local maxima, ascending.
    pub minor_positions: Vec<f64>,
    pub threshold: f64,
}

const MAX_EXTENSIONS: usize = 30;

struct Profile {
    q: Vec<f64>,
    rho: Vec<f64>,
    scale: f64,
}

/// Sample the even density on `[0, Q]` finely enough to resolve both the
/// core and the interference fringes, extending `Q` until the density has
/// dropped below half its maximum.
fn profile(tau: Eigenvalue, n: ParityIndex, t: f64, params: PhysicalParams) -> Result<(Profile, impl Fn(f64) -> Result<f64>)> {
    tau.require_normalizable()?;
    if !t.is_finite() {
        return Err(Error::Domain(format!("time {t} is not finite")));
    }
    let s = tau.shifted(t);
    let kernel = PositionKernel::new(s, n, params, true)?;
    let density = move |q: f64| kernel.eval(q).map(|e| e.value.norm_sqr());

    let abs_s = s.as_complex().norm();
    let (mu, hbar) = (params.mu, params.hbar);
    let l1 = (2.0 * hbar * abs_s / mu).sqrt();
    let lg = abs_s * (hbar / (mu * s.tau_i)).sqrt();
    let detune = s.tau_r.abs();
    // local fringe wavelength of the Gaussian/algebraic interference
    let step = |q: f64| {
        let mut h = l1 / 16.0;
        if detune > 0.0 && q > 0.0 {
            h = h.min(2.0 * std::f64::consts::PI * hbar * abs_s * abs_s / (mu * q * detune) / 12.0);
        }
        h
    };

    let mut q = vec![0.0];
    let mut rho = vec![density(0.0)?];
    let mut limit = (6.0 * lg).max(10.0 * l1);
    let mut max = rho[0];
    for _ in 0..MAX_EXTENSIONS {
        while *q.last().unwrap() < limit {
            let x = q.last().unwrap() + step(*q.last().unwrap());
            let d = density(x)?;
            if !d.is_finite() {
                return Err(Error::Domain(format!("density is not finite at q = {x}")));
            }
            max = max.max(d);
            q.push(x);
            rho.push(d);
        }
        if *rho.last().unwrap() < 0.5 * max {
            break;
        }
        limit *= 2.0;
    }
    Ok((Profile { q, rho, scale: l1 }, density))
}

/// Golden-section maximisation on `[a, b]`.
fn refine_max<F: Fn(f64) -> Result<f64>>(f: &F, mut a: f64, mut b: f64, scale: f64) -> Result<(f64, f64)> {
    let r = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let mut fc = f(c)?;
    let mut fd = f(d)?;
    for _ in 0..200 {
        if b - a <= 1e-13 * scale.max(b.abs()) {
            break;
        }
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d)?;
        }
    }
    let x = 0.5 * (a + b);
    Ok((x, f(x)?))
}

/// Strict local maxima of the sampled half-line profile, refined.
fn local_maxima<F: Fn(f64) -> Result<f64>>(p: &Profile, f: &F) -> Result<Vec<(f64, f64)>> {
    let mut out = Vec::new();
    let m = p.rho.len();
    if m >= 2 && p.rho[0] > p.rho[1] {
        out.push((0.0, p.rho[0]));
    }
    for k in 1..m.saturating_sub(1) {
        if p.rho[k] > p.rho[k - 1] && p.rho[k] >= p.rho[k + 1] {
            out.push(refine_max(f, p.q[k - 1], p.q[k + 1], p.scale)?);
        }
    }
    Ok(out)
}

/// Width at half maximum at time `t`.
pub fn whm(tau: Eigenvalue, n: ParityIndex, t: f64, params: PhysicalParams) -> Result<WhmResult> {
    let (p, f) = profile(tau, n, t, params)?;
    let (k_max, &grid_max) = p
        .rho
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .ok_or(Error::PeakNotFound)?;
    let grid_min = p.rho.iter().copied().fold(f64::INFINITY, f64::min);
    if !(grid_max > 0.0) || grid_max - grid_min <= 1e-14 * grid_max {
        return Err(Error::PeakNotFound);
    }
    let (q_peak, peak_value) = if k_max == 0 {
        (0.0, grid_max)
    } else {
        let hi = p.q[(k_max + 1).min(p.q.len() - 1)];
        let refined = refine_max(&f, p.q[k_max - 1], hi, p.scale)?;
        if refined.1 >= grid_max {
            refined
        } else {
            (p.q[k_max], grid_max)
        }
    };
    let half = 0.5 * peak_value;
    let k = p.rho.iter().rposition(|&r| r >= half).ok_or(Error::PeakNotFound)?;
    if k + 1 >= p.q.len() {
        return Err(Error::PeakNotFound);
    }
    let (mut lo, mut hi) = (p.q[k], p.q[k + 1]);
    while hi - lo > 1e-13 * hi.max(p.scale) {
        let mid = 0.5 * (lo + hi);
        if f(mid)? >= half {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let crossing = 0.5 * (lo + hi);
    let peak_positions = if q_peak == 0.0 { vec![0.0] } else { vec![-q_peak, q_peak] };
    Ok(WhmResult {
        t,
        whm: 2.0 * crossing,
        peak_value,
        peak_positions,
    })
}

/// Number and location of the maxima of `|φ(q, t)|²` that reach half the
/// global maximum. Weaker maxima are listed separately.
pub fn peak_census(tau: Eigenvalue, n: ParityIndex, t: f64, params: PhysicalParams) -> Result<PeakCensus> {
    let (p, f) = profile(tau, n, t, params)?;
    let maxima = local_maxima(&p, &f)?;
    let global = maxima.iter().map(|m| m.1).fold(0.0, f64::max);
    let mut census = PeakCensus {
        count: 0,
        positions: Vec::new(),
        values: Vec::new(),
        minor_positions: Vec::new(),
        threshold: PEAK_RELATIVE_THRESHOLD,
    };
    if !(global > 0.0) {
        return Ok(census);
    }
    let mut major = Vec::new();
    let mut minor = Vec::new();
    for &(q, v) in &maxima {
        let bucket = if v >= PEAK_RELATIVE_THRESHOLD * global { &mut major } else { &mut minor };
        if q == 0.0 {
            bucket.push((0.0, v));
        } else {
            bucket.push((-q, v));
            bucket.push((q, v));
        }
    }
    major.sort_by(|a, b| a.0.total_cmp(&b.0));
    minor.sort_by(|a, b| a.0.total_cmp(&b.0));
    census.count = major.len();
    census.positions = major.iter().map(|m| m.0).collect();
    census.values = major.iter().map(|m| m.1).collect();
    census.minor_positions = minor.iter().map(|m| m.0).collect();
    Ok(census)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_and_twin_peaks_at_collapse() {
        let tau = Eigenvalue::new(0.5, 0.01).unwrap();
        let pp = PhysicalParams::default();
        let c0 = peak_census(tau, ParityIndex::EVEN, 0.5, pp).unwrap();
        assert_eq!(c0.count, 1);
        assert_eq!(c0.positions, vec![0.0]);
        // the weak side lobes beyond the first zero of the Kummer function
        assert_eq!(c0.minor_positions.len(), 2);
        let c1 = peak_census(tau, ParityIndex::ODD, 0.5, pp).unwrap();
        assert_eq!(c1.count, 2);
        assert_eq!(c1.positions[0], -c1.positions[1]);
    }

    #[test]
    fn whm_crossings_are_symmetric_and_scale() {
        let pp = PhysicalParams::default();
        let a = whm(Eigenvalue::new(0.5, 0.04).unwrap(), ParityIndex::ODD, 0.5, pp).unwrap();
        let b = whm(Eigenvalue::new(0.5, 0.01).unwrap(), ParityIndex::ODD, 0.5, pp).unwrap();
        assert!((a.whm / b.whm - 2.0).abs() < 1e-9);
        assert_eq!(b.peak_positions.len(), 2);
    }
}
