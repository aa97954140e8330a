use super::{base_inputs, par_map, require_normalizable};
use crate::config::RunConfig;
use crate::error::CliError;
use crate::output::{Output, Plot, Table};
use rayon::ThreadPool;
use toa_core::eigenstates::evolved_density;
use toa_core::SpacetimePoint;

pub fn run(cfg: &RunConfig, pool: &ThreadPool) -> Result<Output, CliError> {
    require_normalizable(cfg.tau.tau_i)?;
    let qs = cfg.q_grid.values();
    let ts = cfg.t_grid.values();
    let points: Vec<(f64, f64)> = ts.iter().flat_map(|&t| qs.iter().map(move |&q| (q, t))).collect();
    let rho = par_map(pool, &points, |&(q, t)| evolved_density(SpacetimePoint::new(q, t)?, cfg.tau, cfg.n, cfg.params))?;
    let inputs = base_inputs(cfg)
        .num("q_min", cfg.q_grid.min)
        .num("q_max", cfg.q_grid.max)
        .num("q_points", cfg.q_grid.points as f64)
        .num("t_min", cfg.t_grid.min)
        .num("t_max", cfg.t_grid.max)
        .num("t_points", cfg.t_grid.points as f64)
        .build();
    let mut out = Output::new("density", inputs);
    out.table = Some(Table {
        columns: vec!["q", "t", "density"],
        rows: points.iter().zip(rho).map(|(&(q, t), r)| vec![q, t, r]).collect(),
        plot: Plot::Heatmap { x: 0, y: 1, z: 2 },
        block: Some(1),
    });
    Ok(out)
}
