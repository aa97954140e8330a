use crate::error::CliError;
use clap::{Args, ValueEnum};
use std::path::{Path, PathBuf};
use toa_core::{Eigenvalue, ParityIndex, PhysicalParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Svg,
    /// Whitespace-separated columns for gnuplot.
    Dat,
}

/// Options shared by every subcommand. Anything left unset falls back to the
/// config file, then to the built-in default.
#[derive(Debug, Clone, Default, Args)]
pub struct GlobalArgs {
    /// key=value file with defaults for any of these options
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
    #[arg(long, global = true)]
    pub mu: Option<f64>,
    #[arg(long, global = true)]
    pub hbar: Option<f64>,
    #[arg(long = "tau-r", global = true, allow_hyphen_values = true)]
    pub tau_r: Option<f64>,
    #[arg(long = "tau-i", global = true, allow_hyphen_values = true)]
    pub tau_i: Option<f64>,
    /// 0 (even) or 1 (odd)
    #[arg(long, global = true)]
    pub parity: Option<String>,
    /// Exponent of the modified spread, 0 <= gamma < 2
    #[arg(long, global = true)]
    pub gamma: Option<f64>,
    /// Absolute quadrature tolerance
    #[arg(long = "tol-abs", global = true)]
    pub tol_abs: Option<f64>,
    #[arg(long = "q-min", global = true, allow_hyphen_values = true)]
    pub q_min: Option<f64>,
    #[arg(long = "q-max", global = true, allow_hyphen_values = true)]
    pub q_max: Option<f64>,
    #[arg(long = "q-points", global = true)]
    pub q_points: Option<usize>,
    #[arg(long = "t-min", global = true, allow_hyphen_values = true)]
    pub t_min: Option<f64>,
    #[arg(long = "t-max", global = true, allow_hyphen_values = true)]
    pub t_max: Option<f64>,
    #[arg(long = "t-points", global = true)]
    pub t_points: Option<usize>,
    /// Comma-separated list of tau_i values
    #[arg(long = "tau-i-list", global = true)]
    pub tau_i_list: Option<String>,
    /// Comma-separated list of gamma values
    #[arg(long = "gamma-list", global = true)]
    pub gamma_list: Option<String>,
    /// Interval `a:b` for the delta masses; repeatable
    #[arg(long = "interval", global = true, allow_hyphen_values = true)]
    pub intervals: Vec<String>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Output file; stdout when absent
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    /// Worker threads; falls back to TOA_KIT_JOBS, then to all cores
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Write runtime_ms as null so reports are byte-reproducible
    #[arg(long = "no-timing", global = true)]
    pub no_timing: bool,
}

fn parse<T: std::str::FromStr>(key: &str, v: &str) -> Result<T, CliError> {
    v.trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("bad value for {key}: {v:?}")))
}

pub fn parse_list(key: &str, v: &str) -> Result<Vec<f64>, CliError> {
    v.split(',').filter(|s| !s.trim().is_empty()).map(|s| parse(key, s)).collect()
}

pub fn parse_interval(v: &str) -> Result<(f64, f64), CliError> {
    let (a, b) = v
        .split_once(':')
        .ok_or_else(|| CliError::Usage(format!("interval must look like a:b, got {v:?}")))?;
    Ok((parse("interval", a)?, parse("interval", b)?))
}

pub fn parse_parity(v: &str) -> Result<ParityIndex, CliError> {
    match v.trim() {
        "0" | "even" => Ok(ParityIndex::EVEN),
        "1" | "odd" => Ok(ParityIndex::ODD),
        _ => Err(CliError::Usage(format!("parity must be 0 or 1, got {v:?}"))),
    }
}

fn set<T>(slot: &mut Option<T>, value: T) {
    if slot.is_none() {
        *slot = Some(value);
    }
}

impl GlobalArgs {
    /// Fill unset options from `key = value` lines. Flags already given win.
    pub fn merge_config_text(&mut self, text: &str) -> Result<(), CliError> {
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("config line {}: expected key=value", lineno + 1)))?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "mu" => set(&mut self.mu, parse(key, value)?),
                "hbar" => set(&mut self.hbar, parse(key, value)?),
                "tau-r" => set(&mut self.tau_r, parse(key, value)?),
                "tau-i" => set(&mut self.tau_i, parse(key, value)?),
                "parity" => set(&mut self.parity, value.to_string()),
                "gamma" => set(&mut self.gamma, parse(key, value)?),
                "tol-abs" => set(&mut self.tol_abs, parse(key, value)?),
                "q-min" => set(&mut self.q_min, parse(key, value)?),
                "q-max" => set(&mut self.q_max, parse(key, value)?),
                "q-points" => set(&mut self.q_points, parse(key, value)?),
                "t-min" => set(&mut self.t_min, parse(key, value)?),
                "t-max" => set(&mut self.t_max, parse(key, value)?),
                "t-points" => set(&mut self.t_points, parse(key, value)?),
                "tau-i-list" => set(&mut self.tau_i_list, value.to_string()),
                "gamma-list" => set(&mut self.gamma_list, value.to_string()),
                "intervals" => {
                    if self.intervals.is_empty() {
                        self.intervals = value.split(',').map(|s| s.trim().to_string()).collect();
                    }
                }
                "format" => set(
                    &mut self.format,
                    Format::from_str(value, true).map_err(|e| CliError::Usage(format!("format: {e}")))?,
                ),
                "output" => set(&mut self.output, PathBuf::from(value)),
                "jobs" => set(&mut self.jobs, parse(key, value)?),
                _ => return Err(CliError::Usage(format!("config line {}: unknown key {key:?}", lineno + 1))),
            }
        }
        Ok(())
    }

    pub fn merge_config_file(&mut self, path: &Path) -> Result<(), CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        self.merge_config_text(&text)
    }
}

/// Uniform grid of `points` values from `min` to `max`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub min: f64,
    pub max: f64,
    pub points: usize,
}

impl Grid {
    pub fn new(min: f64, max: f64, points: usize) -> Result<Self, CliError> {
        if points == 0 {
            return Err(CliError::Usage("grid needs at least one point".into()));
        }
        if !(min.is_finite() && max.is_finite()) || (points > 1 && !(min < max)) {
            return Err(CliError::Usage(format!("grid bounds must be finite with min < max, got {min}..{max}")));
        }
        Ok(Grid { min, max, points })
    }

    pub fn step(&self) -> f64 {
        if self.points > 1 {
            (self.max - self.min) / (self.points - 1) as f64
        } else {
            0.0
        }
    }

    pub fn values(&self) -> Vec<f64> {
        let h = self.step();
        (0..self.points)
            .map(|k| if k + 1 == self.points { self.max } else { self.min + h * k as f64 })
            .collect()
    }
}

/// Fully resolved settings for one run.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub params: PhysicalParams,
    pub tau: Eigenvalue,
    pub n: ParityIndex,
    pub gamma: Option<f64>,
    pub tol_abs: Option<f64>,
    pub q_grid: Grid,
    pub t_grid: Grid,
    pub tau_i_list: Option<Vec<f64>>,
    pub gamma_list: Option<Vec<f64>>,
    pub intervals: Vec<(f64, f64)>,
    pub format: Option<Format>,
    pub output: Option<PathBuf>,
    pub jobs: usize,
    pub timing: bool,
}

pub const DEFAULT_TAU_R: f64 = 0.5;
pub const DEFAULT_TAU_I: f64 = 0.01;

impl RunConfig {
    /// Resolve against defaults. `default_tau_i` lets a command pick its own
    /// default (the spread sweep runs at `τ_I = 1`).
    pub fn resolve(args: &GlobalArgs, default_tau_i: f64, env_jobs: Option<&str>) -> Result<Self, CliError> {
        let params = PhysicalParams::new(args.mu.unwrap_or(1.0), args.hbar.unwrap_or(1.0)).map_err(CliError::usage)?;
        let tau_r = args.tau_r.unwrap_or(DEFAULT_TAU_R);
        let tau = Eigenvalue::new(tau_r, args.tau_i.unwrap_or(default_tau_i)).map_err(CliError::usage)?;
        let n = args.parity.as_deref().map(parse_parity).transpose()?.unwrap_or(ParityIndex::EVEN);
        let (t_lo, t_hi) = if tau_r > 0.0 { (0.0, 2.0 * tau_r) } else { (tau_r - 1.0, tau_r + 1.0) };
        let q_grid = Grid::new(args.q_min.unwrap_or(-2.0), args.q_max.unwrap_or(2.0), args.q_points.unwrap_or(201))?;
        let t_grid = Grid::new(args.t_min.unwrap_or(t_lo), args.t_max.unwrap_or(t_hi), args.t_points.unwrap_or(201))?;
        if let Some(tol) = args.tol_abs {
            if !(tol > 0.0) {
                return Err(CliError::Usage(format!("tol-abs must be positive, got {tol}")));
            }
        }
        let tau_i_list = args.tau_i_list.as_deref().map(|v| parse_list("tau-i-list", v)).transpose()?;
        let gamma_list = args.gamma_list.as_deref().map(|v| parse_list("gamma-list", v)).transpose()?;
        for list in [&tau_i_list, &gamma_list].into_iter().flatten() {
            if list.is_empty() {
                return Err(CliError::Usage("empty list".into()));
            }
        }
        let intervals = args.intervals.iter().map(|s| parse_interval(s)).collect::<Result<Vec<_>, _>>()?;
        let jobs = match args.jobs {
            Some(j) => j,
            None => match env_jobs {
                Some(v) => parse("TOA_KIT_JOBS", v)?,
                None => std::thread::available_parallelism().map_or(1, |n| n.get()),
            },
        };
        if jobs == 0 {
            return Err(CliError::Usage("jobs must be at least 1".into()));
        }
        Ok(RunConfig {
            params,
            tau,
            n,
            gamma: args.gamma,
            tol_abs: args.tol_abs,
            q_grid,
            t_grid,
            tau_i_list,
            gamma_list,
            intervals,
            format: args.format,
            output: args.output.clone(),
            jobs,
            timing: !args.no_timing,
        })
    }
}
