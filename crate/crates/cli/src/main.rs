//! `toa-kit`: density sweeps, width and spread tables, delta-sequence masses,
//! energy spread and a one-shot verification suite for the free-particle
//! time-of-arrival eigenfunctions.

// `!(x > 0.0)` also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod commands;
mod config;
mod error;
mod output;
mod report;

use clap::{Parser, Subcommand};
use commands::probe::{parse_complex, Function};
use commands::verify::Level;
use config::{Format, GlobalArgs, RunConfig};
use error::CliError;
use std::process::ExitCode;

#[derive(Debug, Parser)]
#[command(name = "toa-kit", version, about = "Time-of-arrival eigenfunctions of the free particle")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// |phi(q, t)|^2 over a (q, t) grid
    Density,
    /// Width at half maximum along t for each tau_i
    Whm,
    /// Modified spread and its t-derivatives at t = tau_r, swept over gamma
    Spread,
    /// Interval masses of the collapse density as tau_i shrinks
    Delta,
    /// Energy spread from the momentum density
    Uncertainty,
    /// Run the verification checks; exits 1 if any fails
    Verify {
        #[arg(long, value_enum, default_value = "quick")]
        level: Level,
        /// Perturb one closed-form constant so that a check must fail
        #[arg(long, hide = true)]
        tamper: bool,
    },
    /// Evaluate one special function and print how it was computed
    #[command(hide = true)]
    SpecfunProbe {
        #[arg(long, value_enum, default_value = "hyp1f1")]
        function: Function,
        #[arg(long, allow_hyphen_values = true)]
        a: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        b: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        z: String,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    let mut global = cli.global;
    if let Some(path) = global.config.clone() {
        global.merge_config_file(&path)?;
    }
    let env_jobs = std::env::var("TOA_KIT_JOBS").ok();
    let default_tau_i = match cli.command {
        Command::Spread => commands::spread::DEFAULT_TAU_I,
        _ => config::DEFAULT_TAU_I,
    };
    let cfg = RunConfig::resolve(&global, default_tau_i, env_jobs.as_deref())?;

    if let Command::SpecfunProbe { function, a, b, z } = &cli.command {
        let mut args: Vec<_> = [a, b].into_iter().flatten().map(|s| parse_complex(s)).collect::<Result<_, _>>()?;
        args.push(parse_complex(z)?);
        let text = commands::probe::run(*function, &args)?;
        return output::emit(&text, cfg.output.as_deref());
    }

    let pool = commands::pool(cfg.jobs)?;
    let (out, default_format) = match cli.command {
        Command::Density => (commands::density::run(&cfg, &pool)?, Format::Csv),
        Command::Whm => (commands::whm::run(&cfg, &pool)?, Format::Csv),
        Command::Spread => (commands::spread::run(&cfg, &pool)?, Format::Csv),
        Command::Delta => (commands::delta::run(&cfg, &pool)?, Format::Csv),
        Command::Uncertainty => (commands::uncertainty::run(&cfg, &pool)?, Format::Csv),
        Command::Verify { level, tamper } => (commands::verify::run(&cfg, &pool, level, tamper)?, Format::Json),
        Command::SpecfunProbe { .. } => unreachable!("handled above"),
    };
    let text = out.render(cfg.format.unwrap_or(default_format))?;
    output::emit(&text, cfg.output.as_deref())?;

    for c in out.checks.iter().filter(|c| !c.pass) {
        eprintln!(
            "FAIL {}: expected {:e}, observed {:e}, tolerance {:e} ({}){}",
            c.check_name,
            c.expected,
            c.observed,
            c.tolerance,
            c.comparison.as_str(),
            c.error.as_deref().map(|e| format!(": {e}")).unwrap_or_default()
        );
    }
    match out.failures() {
        0 => {
            if !out.checks.is_empty() {
                eprintln!("all {} checks passed", out.checks.len());
            }
            Ok(())
        }
        k => Err(CliError::ChecksFailed(k)),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => e.exit(),
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("toa-kit: {e}");
            e.exit_code()
        }
    }
}
