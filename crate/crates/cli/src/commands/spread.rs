use super::{base_inputs, par_map, require_normalizable, tolerance};
use crate::config::RunConfig;
use crate::error::CliError;
use crate::output::{Output, Plot, Table};
use crate::report::{immediate, Comparison};
use rayon::ThreadPool;
use toa_core::analysis::spread_with;

/// `τ_I` the γ-sweep runs at unless told otherwise.
pub const DEFAULT_TAU_I: f64 = 1.0;
pub const D1_TOLERANCE: f64 = 1e-5;

/// γ = 0.1, 0.2, ..., 1.9
pub fn default_gammas() -> Vec<f64> {
    (1..20).map(|k| k as f64 / 10.0).collect()
}

pub fn run(cfg: &RunConfig, pool: &ThreadPool) -> Result<Output, CliError> {
    require_normalizable(cfg.tau.tau_i)?;
    let gammas = match (&cfg.gamma_list, cfg.gamma) {
        (Some(list), _) => list.clone(),
        (None, Some(g)) => vec![g],
        (None, None) => default_gammas(),
    };
    if let Some(&g) = gammas.iter().find(|&&g| !(0.0..2.0).contains(&g)) {
        return Err(CliError::Usage(format!("gamma must lie in [0, 2), got {g}")));
    }
    let tol = tolerance(cfg, 1e-12, 1e-12);
    let t = cfg.tau.tau_r;
    let results = par_map(pool, &gammas, |&g| spread_with(cfg.tau, cfg.n, t, g, cfg.params, tol))?;

    let mut out = Output::new("spread", base_inputs(cfg).num("t", t).build());
    out.notes.push("d2 > 0 at t = tau_r means the spread has a local minimum there");
    for r in &results {
        let inputs = || base_inputs(cfg).num("gamma", r.gamma).num("h", r.h).build();
        out.checks.push(immediate("spread-slope-vanishes", inputs(), Comparison::AbsDiff, D1_TOLERANCE, 0.0, r.d1));
        out.checks.push(immediate("spread-concave-up", inputs(), Comparison::Above, 0.0, 0.0, r.d2));
    }
    out.table = Some(Table {
        columns: vec!["gamma", "t", "sigma", "sigma_err", "d1", "d2"],
        rows: results.iter().map(|r| vec![r.gamma, r.t, r.sigma, r.sigma_err, r.d1, r.d2]).collect(),
        plot: Plot::Lines { x: 0, y: 5, series: None },
        block: None,
    });
    Ok(out)
}
