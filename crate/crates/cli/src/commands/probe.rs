use crate::error::CliError;
use crate::output::raw_float;
use clap::ValueEnum;
use num_complex::Complex64;
use serde::Serialize;
use serde_json::value::RawValue;
use toa_core::specfun::{gamma, hyp1f1};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Function {
    Hyp1f1,
    Gamma,
}

/// `re` or `re,im`.
pub fn parse_complex(s: &str) -> Result<Complex64, CliError> {
    let bad = || CliError::Usage(format!("expected re or re,im, got {s:?}"));
    let mut parts = s.split(',').map(|p| p.trim().parse::<f64>());
    let re = parts.next().ok_or_else(bad)?.map_err(|_| bad())?;
    let im = match parts.next() {
        Some(v) => v.map_err(|_| bad())?,
        None => 0.0,
    };
    if parts.next().is_some() {
        return Err(bad());
    }
    Ok(Complex64::new(re, im))
}

#[derive(Serialize)]
struct Probe {
    schema_version: &'static str,
    function: &'static str,
    arguments: Vec<[Box<RawValue>; 2]>,
    value: [Box<RawValue>; 2],
    #[serde(skip_serializing_if = "Option::is_none")]
    regime: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    est_rel_err: Option<Box<RawValue>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    terms_used: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    extended_precision: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    near_stokes_line: Option<bool>,
}

fn pair(z: Complex64) -> [Box<RawValue>; 2] {
    [raw_float(z.re), raw_float(z.im)]
}

/// One special-function evaluation as JSON.
pub fn run(function: Function, args: &[Complex64]) -> Result<String, CliError> {
    let probe = match function {
        Function::Hyp1f1 => {
            let [a, b, z] = args else {
                return Err(CliError::Usage("hyp1f1 needs --a, --b and --z".into()));
            };
            let r = hyp1f1(*a, *b, *z)?;
            Probe {
                schema_version: crate::output::SCHEMA_VERSION,
                function: "hyp1f1",
                arguments: args.iter().map(|&z| pair(z)).collect(),
                value: pair(r.value),
                regime: Some(r.regime.as_str()),
                est_rel_err: Some(raw_float(r.est_rel_err)),
                terms_used: Some(r.terms_used),
                extended_precision: Some(r.extended_precision),
                near_stokes_line: Some(r.near_stokes_line),
            }
        }
        Function::Gamma => {
            let [z] = args else {
                return Err(CliError::Usage("gamma needs --z only".into()));
            };
            Probe {
                schema_version: crate::output::SCHEMA_VERSION,
                function: "gamma",
                arguments: vec![pair(*z)],
                value: pair(gamma(*z)?),
                regime: None,
                est_rel_err: None,
                terms_used: None,
                extended_precision: None,
                near_stokes_line: None,
            }
        }
    };
    let mut s = serde_json::to_string_pretty(&probe).map_err(|e| CliError::Usage(e.to_string()))?;
    s.push('\n');
    Ok(s)
}
