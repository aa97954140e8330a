use super::{par_map, require_normalizable};
use crate::config::RunConfig;
use crate::error::CliError;
use crate::output::{Output, Plot, Table};
use crate::report::{immediate, inputs, Comparison};
use rayon::ThreadPool;
use toa_core::analysis::energy_uncertainty;
use toa_core::Eigenvalue;

pub const REL_TOLERANCE: f64 = 1e-8;

/// Ten values log-spaced over [1e-3, 10].
pub fn default_tau_is() -> Vec<f64> {
    (0..10).map(|k| 10f64.powf(-3.0 + 4.0 * k as f64 / 9.0)).collect()
}

pub fn run(cfg: &RunConfig, pool: &ThreadPool) -> Result<Output, CliError> {
    let tau_is = cfg.tau_i_list.clone().unwrap_or_else(default_tau_is);
    for &ti in &tau_is {
        require_normalizable(ti)?;
    }
    let tau_r = cfg.tau.tau_r;
    let de = par_map(pool, &tau_is, |&ti| energy_uncertainty(Eigenvalue::new(tau_r, ti)?, cfg.n, cfg.params))?;
    let base = || {
        inputs()
            .num("mu", cfg.params.mu)
            .num("hbar", cfg.params.hbar)
            .num("tau_r", tau_r)
            .num("parity", cfg.n.as_f64())
    };
    let mut out = Output::new("uncertainty", base().build());
    let mut rows = Vec::with_capacity(tau_is.len());
    for (&ti, &d) in tau_is.iter().zip(&de) {
        let expected = cfg.params.hbar / (2.0 * ti);
        rows.push(vec![ti, d, expected, (d - expected).abs() / expected]);
        out.checks.push(immediate(
            "energy-uncertainty",
            base().num("tau_i", ti).build(),
            Comparison::RelDiff,
            REL_TOLERANCE,
            expected,
            d,
        ));
    }
    out.table = Some(Table {
        columns: vec!["tau_i", "delta_e", "expected", "rel_dev"],
        rows,
        plot: Plot::Lines { x: 0, y: 1, series: None },
        block: None,
    });
    Ok(out)
}
