use crate::output::{raw_float, raw_str};
use serde::Serialize;
use serde_json::value::RawValue;
use std::collections::BTreeMap;
use std::time::Instant;

/// How `observed` is judged against `expected` and `tolerance`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Comparison {
    /// `|observed - expected| <= tolerance`
    AbsDiff,
    /// `|observed - expected| <= tolerance * |expected|`
    RelDiff,
    /// `observed <= expected + tolerance`
    AtMost,
    /// `observed < expected`
    Below,
    /// `observed > expected`
    Above,
}

impl Comparison {
    pub fn passes(self, expected: f64, observed: f64, tolerance: f64) -> bool {
        match self {
            Comparison::AbsDiff => (observed - expected).abs() <= tolerance,
            Comparison::RelDiff => (observed - expected).abs() <= tolerance * expected.abs(),
            Comparison::AtMost => observed <= expected + tolerance,
            Comparison::Below => observed < expected,
            Comparison::Above => observed > expected,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Comparison::AbsDiff => "abs-diff",
            Comparison::RelDiff => "rel-diff",
            Comparison::AtMost => "at-most",
            Comparison::Below => "below",
            Comparison::Above => "above",
        }
    }
}

pub type Inputs = BTreeMap<String, Box<RawValue>>;

#[derive(Debug, Default)]
pub struct InputsBuilder(Inputs);

impl InputsBuilder {
    pub fn num(mut self, key: &str, v: f64) -> Self {
        self.0.insert(key.to_string(), raw_float(v));
        self
    }

    pub fn text(mut self, key: &str, v: &str) -> Self {
        self.0.insert(key.to_string(), raw_str(v));
        self
    }

    pub fn build(self) -> Inputs {
        self.0
    }
}

pub fn inputs() -> InputsBuilder {
    InputsBuilder::default()
}

#[derive(Debug, Serialize)]
pub struct CheckReport {
    pub check_name: String,
    pub inputs: Inputs,
    #[serde(serialize_with = "crate::output::ser_float")]
    pub expected: f64,
    #[serde(serialize_with = "crate::output::ser_float")]
    pub observed: f64,
    #[serde(serialize_with = "crate::output::ser_float")]
    pub tolerance: f64,
    pub comparison: Comparison,
    pub pass: bool,
    #[serde(serialize_with = "crate::output::ser_opt_float")]
    pub runtime_ms: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

/// A check that is not yet run.
pub struct Check {
    pub name: String,
    pub inputs: Inputs,
    pub tolerance: f64,
    pub comparison: Comparison,
    /// Returns `(expected, observed)`.
    pub eval: Box<dyn Fn() -> toa_core::Result<(f64, f64)> + Send + Sync>,
}

impl Check {
    pub fn new<F>(name: impl Into<String>, inputs: Inputs, comparison: Comparison, tolerance: f64, eval: F) -> Self
    where
        F: Fn() -> toa_core::Result<(f64, f64)> + Send + Sync + 'static,
    {
        Check {
            name: name.into(),
            inputs,
            tolerance,
            comparison,
            eval: Box::new(eval),
        }
    }

    pub fn run(&self, timing: bool) -> CheckReport {
        let start = Instant::now();
        let outcome = (self.eval)();
        let ms = start.elapsed().as_secs_f64() * 1e3;
        let (expected, observed, error) = match outcome {
            Ok((e, o)) => (e, o, None),
            Err(err) => (f64::NAN, f64::NAN, Some(err.to_string())),
        };
        CheckReport {
            check_name: self.name.clone(),
            inputs: self.inputs.clone(),
            expected,
            observed,
            tolerance: self.tolerance,
            comparison: self.comparison,
            pass: error.is_none() && self.comparison.passes(expected, observed, self.tolerance),
            runtime_ms: timing.then_some(ms),
            error,
        }
    }
}

/// A report whose numbers are already known.
pub fn immediate(
    name: impl Into<String>,
    inputs: Inputs,
    comparison: Comparison,
    tolerance: f64,
    expected: f64,
    observed: f64,
) -> CheckReport {
    CheckReport {
        check_name: name.into(),
        inputs,
        expected,
        observed,
        tolerance,
        comparison,
        pass: comparison.passes(expected, observed, tolerance),
        runtime_ms: None,
        error: None,
    }
}
