use super::{par_map, require_normalizable};
use crate::config::RunConfig;
use crate::error::CliError;
use crate::output::{Output, Plot, Table};
use crate::report::{immediate, inputs, Comparison};
use rayon::ThreadPool;
use toa_core::analysis::{delta_sequence_test, DeltaTestReport, DeltaVerdict};
use toa_core::{Error, IntervalSpec};

pub const DEFAULT_INTERVALS: [(f64, f64); 2] = [(0.5, 1.0), (-1.0, 1.0)];
pub const DEFAULT_TAU_I: [f64; 4] = [1e-1, 1e-2, 1e-3, 1e-4];
pub const LIMIT_TOLERANCE: f64 = 1e-3;
pub const BOUND_SLACK: f64 = 1e-10;

pub fn run(cfg: &RunConfig, pool: &ThreadPool) -> Result<Output, CliError> {
    let intervals = if cfg.intervals.is_empty() { DEFAULT_INTERVALS.to_vec() } else { cfg.intervals.clone() };
    let tau_is = cfg.tau_i_list.clone().unwrap_or_else(|| DEFAULT_TAU_I.to_vec());
    for &ti in &tau_is {
        require_normalizable(ti)?;
    }
    let specs = intervals
        .iter()
        .map(|&(a, b)| IntervalSpec::new(a, b).map_err(CliError::usage))
        .collect::<Result<Vec<_>, _>>()?;
    let reports = par_map(pool, &specs, |&iv| {
        match delta_sequence_test(iv, cfg.n, cfg.tau.tau_r, &tau_is, cfg.params) {
            Err(e @ Error::NonMonotone { .. }) => Ok(Err(e)),
            Err(Error::Domain(msg)) => Ok(Err(Error::Domain(msg))),
            other => other.map(Ok),
        }
    })?;

    let base = inputs()
        .num("mu", cfg.params.mu)
        .num("hbar", cfg.params.hbar)
        .num("tau_r", cfg.tau.tau_r)
        .num("parity", cfg.n.as_f64());
    let mut out = Output::new("delta", base.build());
    let mut rows = Vec::new();
    for (iv, report) in specs.iter().zip(reports) {
        let ins = || {
            inputs()
                .num("alpha", iv.lower)
                .num("beta", iv.upper)
                .num("parity", cfg.n.as_f64())
                .num("tau_i_last", *tau_is.last().expect("nonempty"))
        };
        let r: DeltaTestReport = match report {
            Ok(r) => r,
            Err(Error::Domain(msg)) => return Err(CliError::Usage(msg)),
            Err(e) => {
                let mut c = immediate("delta-monotone", ins().build(), Comparison::AbsDiff, 0.0, 0.0, f64::NAN);
                c.error = Some(e.to_string());
                out.checks.push(c);
                continue;
            }
        };
        for (k, &ti) in r.tau_i_sequence.iter().enumerate() {
            rows.push(vec![iv.lower, iv.upper, ti, r.masses[k], r.mass_errors[k]]);
        }
        let wrong_way = r
            .masses
            .windows(2)
            .filter(|w| match r.verdict {
                DeltaVerdict::TendsToZero => !(w[1] < w[0]),
                DeltaVerdict::TendsToOne => !(w[1] > w[0]),
                DeltaVerdict::Bounded => false,
            })
            .count();
        let ins = || ins().text("verdict", verdict_name(r.verdict)).num("fitted_rate", r.fitted_rate);
        out.checks.push(immediate("delta-monotone", ins().build(), Comparison::AbsDiff, 0.0, 0.0, wrong_way as f64));
        let last = *r.masses.last().expect("nonempty");
        match r.verdict {
            DeltaVerdict::TendsToZero => out.checks.push(immediate(
                "delta-limit",
                ins().build(),
                Comparison::AbsDiff,
                LIMIT_TOLERANCE,
                0.0,
                last,
            )),
            DeltaVerdict::TendsToOne => out.checks.push(immediate(
                "delta-limit",
                ins().build(),
                Comparison::AbsDiff,
                LIMIT_TOLERANCE,
                1.0,
                last,
            )),
            DeltaVerdict::Bounded => {}
        }
        out.checks.push(immediate("delta-bounded", ins().build(), Comparison::AtMost, BOUND_SLACK, 1.0, r.max_mass));
    }
    out.table = Some(Table {
        columns: vec!["alpha", "beta", "tau_i", "mass", "mass_err"],
        rows,
        plot: Plot::Lines { x: 2, y: 3, series: Some(0) },
        block: Some(0),
    });
    Ok(out)
}

fn verdict_name(v: DeltaVerdict) -> &'static str {
    match v {
        DeltaVerdict::TendsToZero => "tends-to-zero",
        DeltaVerdict::TendsToOne => "tends-to-one",
        DeltaVerdict::Bounded => "bounded",
    }
}
