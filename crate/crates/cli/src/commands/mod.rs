pub mod delta;
pub mod density;
pub mod probe;
pub mod spread;
pub mod uncertainty;
pub mod verify;
pub mod whm;

use crate::config::RunConfig;
use crate::error::CliError;
use crate::report::{inputs, InputsBuilder};
use rayon::prelude::*;
use rayon::ThreadPool;
use toa_core::Tolerance;

pub fn pool(jobs: usize) -> Result<ThreadPool, CliError> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start {jobs} workers: {e}")))
}

/// Evaluate `f` over `items` on the pool; results come back in input order.
pub fn par_map<T, R, F>(pool: &ThreadPool, items: &[T], f: F) -> Result<Vec<R>, CliError>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> toa_core::Result<R> + Sync + Send,
{
    Ok(pool.install(|| items.par_iter().map(f).collect::<toa_core::Result<Vec<R>>>())?)
}

/// Inputs every table carries: physical parameters, eigenvalue and parity.
pub fn base_inputs(cfg: &RunConfig) -> InputsBuilder {
    inputs()
        .num("mu", cfg.params.mu)
        .num("hbar", cfg.params.hbar)
        .num("tau_r", cfg.tau.tau_r)
        .num("tau_i", cfg.tau.tau_i)
        .num("parity", cfg.n.as_f64())
}

pub fn tolerance(cfg: &RunConfig, abs_default: f64, rel: f64) -> Tolerance {
    Tolerance {
        abs_tol: cfg.tol_abs.unwrap_or(abs_default),
        rel_tol: rel,
        ..Tolerance::default()
    }
}

pub fn require_normalizable(tau_i: f64) -> Result<(), CliError> {
    if tau_i > 0.0 {
        Ok(())
    } else {
        Err(CliError::Usage(format!("tau-i must be positive for a normalizable state, got {tau_i}")))
    }
}
