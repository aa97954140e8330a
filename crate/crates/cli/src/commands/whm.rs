use super::{par_map, require_normalizable};
use crate::config::RunConfig;
use crate::error::CliError;
use crate::output::{Output, Plot, Table};
use crate::report::{immediate, inputs, Comparison};
use rayon::ThreadPool;
use toa_core::analysis::whm;
use toa_core::Eigenvalue;

pub const DEFAULT_TAU_I: [f64; 3] = [0.05, 0.01, 0.005];

pub fn run(cfg: &RunConfig, pool: &ThreadPool) -> Result<Output, CliError> {
    let tau_is = cfg.tau_i_list.clone().unwrap_or_else(|| DEFAULT_TAU_I.to_vec());
    for &ti in &tau_is {
        require_normalizable(ti)?;
    }
    let tau_r = cfg.tau.tau_r;
    let ts = cfg.t_grid.values();
    let points: Vec<(f64, f64)> = tau_is.iter().flat_map(|&ti| ts.iter().map(move |&t| (ti, t))).collect();
    let results = par_map(pool, &points, |&(ti, t)| whm(Eigenvalue::new(tau_r, ti)?, cfg.n, t, cfg.params))?;

    let inputs = inputs()
        .num("mu", cfg.params.mu)
        .num("hbar", cfg.params.hbar)
        .num("tau_r", tau_r)
        .num("parity", cfg.n.as_f64())
        .num("t_min", cfg.t_grid.min)
        .num("t_max", cfg.t_grid.max)
        .num("t_points", cfg.t_grid.points as f64)
        .build();
    let mut out = Output::new("whm", inputs);
    out.notes.push("for twin peaks the width is the distance between the outermost half-maximum crossings");

    // collapse checks only make sense when tau_r lies on the swept range
    let step = cfg.t_grid.step();
    if cfg.t_grid.points > 2 && cfg.t_grid.min <= tau_r && tau_r <= cfg.t_grid.max {
        for (k, &ti) in tau_is.iter().enumerate() {
            let row = &results[k * ts.len()..(k + 1) * ts.len()];
            let argmin = row
                .iter()
                .zip(&ts)
                .min_by(|a, b| a.0.whm.total_cmp(&b.0.whm))
                .map(|(_, &t)| t)
                .unwrap_or(f64::NAN);
            out.checks.push(immediate(
                "whm-argmin-at-collapse",
                inputs_for(cfg, ti).build(),
                Comparison::AbsDiff,
                step,
                tau_r,
                argmin,
            ));
        }
        let mut at_collapse = par_map(pool, &tau_is, |&ti| {
            whm(Eigenvalue::new(tau_r, ti)?, cfg.n, tau_r, cfg.params).map(|w| (ti, w.whm))
        })?;
        at_collapse.sort_by(|a, b| b.0.total_cmp(&a.0));
        for pair in at_collapse.windows(2) {
            let inputs = inputs_for(cfg, pair[1].0).num("tau_i_previous", pair[0].0).build();
            out.checks.push(immediate("whm-at-collapse-decreases", inputs, Comparison::Below, 0.0, pair[0].1, pair[1].1));
        }
    }

    out.table = Some(Table {
        columns: vec!["tau_i", "t", "whm", "peak_value"],
        rows: points.iter().zip(&results).map(|(&(ti, t), r)| vec![ti, t, r.whm, r.peak_value]).collect(),
        plot: Plot::Lines { x: 1, y: 2, series: Some(0) },
        block: Some(0),
    });
    Ok(out)
}

fn inputs_for(cfg: &RunConfig, tau_i: f64) -> crate::report::InputsBuilder {
    inputs()
        .num("tau_r", cfg.tau.tau_r)
        .num("tau_i", tau_i)
        .num("parity", cfg.n.as_f64())
}
