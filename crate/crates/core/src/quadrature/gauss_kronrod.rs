use super::{IntegrandValue, IntervalSpec, QuadratureResult, Tolerance};
use crate::error::{Error, Result};
use std::cmp::Ordering;
use std::collections::BinaryHeap;

/// Kronrod abscissae of the 21-point rule (QUADPACK qk21); odd indices are
/// shared with the 10-point Gauss rule.
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_208_980_629_764,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

/// Gauss weights for XGK[1], XGK[3], ..., XGK[9].
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

/// Hard cap on the number of live panels.
const MAX_PANELS: usize = 50_000;

#[derive(Debug, Clone, Copy)]
struct Panel<T> {
    a: f64,
    b: f64,
    value: T,
    err: f64,
    depth: usize,
}

/// Max-heap entry ordered by panel error.
struct ByError {
    err: f64,
    index: usize,
}

impl PartialEq for ByError {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err && self.index == other.index
    }
}
impl Eq for ByError {}
impl PartialOrd for ByError {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for ByError {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err
            .total_cmp(&other.err)
            .then_with(|| other.index.cmp(&self.index))
    }
}

fn rescale_error(err: f64, resabs: f64, resasc: f64) -> f64 {
    let mut e = err.abs();
    if resasc != 0.0 && e != 0.0 {
        let scale = (200.0 * e / resasc).powf(1.5);
        e = if scale < 1.0 { resasc * scale } else { resasc };
    }
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        e = e.max(50.0 * f64::EPSILON * resabs);
    }
    e
}

fn gk21<T, F>(f: &F, a: f64, b: f64) -> Result<(T, f64)>
where
    T: IntegrandValue,
    F: Fn(f64) -> Result<T>,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center)?;
    let mut res_k = fc * WGK[10];
    let mut res_g = T::default();
    let mut resabs = WGK[10] * fc.magnitude();
    let mut fv1 = [T::default(); 10];
    let mut fv2 = [T::default(); 10];
    for j in 0..10 {
        let dx = half * XGK[j];
        let f1 = f(center - dx)?;
        let f2 = f(center + dx)?;
        fv1[j] = f1;
        fv2[j] = f2;
        res_k = res_k + (f1 + f2) * WGK[j];
        resabs += WGK[j] * (f1.magnitude() + f2.magnitude());
        if j % 2 == 1 {
            res_g = res_g + (f1 + f2) * WG[j / 2];
        }
    }
    let mean = res_k * 0.5;
    let mut resasc = WGK[10] * (fc - mean).magnitude();
    for j in 0..10 {
        resasc += WGK[j] * ((fv1[j] - mean).magnitude() + (fv2[j] - mean).magnitude());
    }
    let value = res_k * half;
    if !value.is_finite_value() {
        return Err(Error::Domain(format!("non-finite integrand on [{a}, {b}]")));
    }
    let err = rescale_error(
        (res_k - res_g).magnitude() * half,
        resabs * half.abs(),
        resasc * half.abs(),
    );
    Ok((value, err))
}

/// Compensated (Neumaier) accumulation in a fixed order.
fn sum_panels<T: IntegrandValue>(panels: &[Panel<T>]) -> (T, f64) {
    let mut order: Vec<usize> = (0..panels.len()).collect();
    order.sort_by(|&i, &j| panels[i].a.total_cmp(&panels[j].a));
    let mut sum = T::default();
    let mut comp = T::default();
    let mut err = 0.0;
    for i in order {
        let v = panels[i].value;
        let t = sum + v;
        if sum.magnitude() >= v.magnitude() {
            comp = comp + ((sum - t) + v);
        } else {
            comp = comp + ((v - t) + sum);
        }
        sum = t;
        err += panels[i].err;
    }
    (sum + comp, err)
}

/// Adaptive integration over a finite interval. The origin is always made a
/// panel boundary when it lies inside the interval.
pub fn integrate_finite<T, F>(f: F, iv: IntervalSpec, tol: Tolerance) -> Result<QuadratureResult<T>>
where
    T: IntegrandValue,
    F: Fn(f64) -> Result<T>,
{
    integrate_with_breaks(f, iv, &[], tol)
}

/// [`integrate_finite`] with additional interior panel boundaries.
pub fn integrate_with_breaks<T, F>(
    f: F,
    iv: IntervalSpec,
    breaks: &[f64],
    tol: Tolerance,
) -> Result<QuadratureResult<T>>
where
    T: IntegrandValue,
    F: Fn(f64) -> Result<T>,
{
    if !iv.is_finite() {
        return Err(Error::Domain(format!(
            "integrate_finite needs a finite interval, got ({}, {})",
            iv.lower, iv.upper
        )));
    }
    let mut points: Vec<f64> = std::iter::once(iv.lower)
        .chain(breaks.iter().copied().filter(|&x| x > iv.lower && x < iv.upper))
        .chain(iv.contains_origin().then_some(0.0))
        .chain(std::iter::once(iv.upper))
        .collect();
    points.sort_by(f64::total_cmp);
    points.dedup();

    let mut panels: Vec<Panel<T>> = Vec::new();
    let mut heap = BinaryHeap::new();
    let mut n_evals = 0;
    for w in points.windows(2) {
        let (value, err) = gk21(&f, w[0], w[1])?;
        n_evals += 21;
        heap.push(ByError {
            err,
            index: panels.len(),
        });
        panels.push(Panel {
            a: w[0],
            b: w[1],
            value,
            err,
            depth: 0,
        });
    }

    let (mut total, mut total_err) = sum_panels(&panels);
    let mut frozen_err = 0.0;
    loop {
        if total_err <= tol.target(total.magnitude()) {
            // confirm with an exact re-summation before stopping
            let (t, e) = sum_panels(&panels);
            total = t;
            total_err = e;
            if total_err <= tol.target(total.magnitude()) {
                break;
            }
        }
        let Some(worst) = heap.pop() else {
            let (t, e) = sum_panels(&panels);
            if e <= tol.target(t.magnitude()) {
                total = t;
                total_err = e;
                break;
            }
            let at = panels
                .iter()
                .filter(|p| p.depth >= tol.max_depth)
                .max_by(|p, q| p.err.total_cmp(&q.err))
                .map(|p| 0.5 * (p.a + p.b))
                .unwrap_or(f64::NAN);
            return Err(Error::DepthExceeded {
                max_depth: tol.max_depth,
                at,
            });
        };
        let p = panels[worst.index];
        let mid = 0.5 * (p.a + p.b);
        if p.depth >= tol.max_depth || mid <= p.a || mid >= p.b {
            // cannot refine further; leave its error in the total
            frozen_err += p.err;
            if frozen_err > tol.target(total.magnitude()) {
                return Err(Error::DepthExceeded {
                    max_depth: tol.max_depth,
                    at: mid,
                });
            }
            continue;
        }
        if panels.len() >= MAX_PANELS {
            let (t, e) = sum_panels(&panels);
            return Err(Error::ToleranceNotMet {
                value: t.to_complex(),
                abs_err_est: e,
                n_evals,
            });
        }
        let (v1, e1) = gk21(&f, p.a, mid)?;
        let (v2, e2) = gk21(&f, mid, p.b)?;
        n_evals += 42;
        total = total - p.value + v1 + v2;
        total_err += e1 + e2 - p.err;
        panels[worst.index] = Panel {
            a: p.a,
            b: mid,
            value: v1,
            err: e1,
            depth: p.depth + 1,
        };
        heap.push(ByError {
            err: e1,
            index: worst.index,
        });
        heap.push(ByError {
            err: e2,
            index: panels.len(),
        });
        panels.push(Panel {
            a: mid,
            b: p.b,
            value: v2,
            err: e2,
            depth: p.depth + 1,
        });
    }

    Ok(QuadratureResult {
        value: total,
        abs_err_est: total_err,
        n_evals,
        tail_contribution: T::default(),
        cutoff: None,
    })
}
