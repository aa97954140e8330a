use crate::config::Format;
use crate::error::CliError;
use crate::report::{CheckReport, Inputs};
use serde::{Serialize, Serializer};
use serde_json::value::RawValue;
use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;

pub const SCHEMA_VERSION: &str = "1";

/// 17 significant digits, locale-free.
pub fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn raw_float(x: f64) -> Box<RawValue> {
    let text = if x.is_finite() { fmt_float(x) } else { "null".to_string() };
    RawValue::from_string(text).expect("formatted float is valid JSON")
}

pub fn raw_str(s: &str) -> Box<RawValue> {
    RawValue::from_string(serde_json::to_string(s).expect("string serializes")).expect("valid JSON")
}

pub fn ser_float<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    raw_float(*x).serialize(s)
}

pub fn ser_opt_float<S: Serializer>(x: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(v) => ser_float(v, s),
        None => s.serialize_none(),
    }
}

fn ser_rows<S: Serializer>(rows: &[Vec<f64>], s: S) -> Result<S::Ok, S::Error> {
    let raw: Vec<Vec<Box<RawValue>>> = rows.iter().map(|r| r.iter().map(|&x| raw_float(x)).collect()).collect();
    raw.serialize(s)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Plot {
    /// `z` over the rectangular `(x, y)` grid; `x` varies fastest.
    Heatmap { x: usize, y: usize, z: usize },
    /// `y` against `x`, one polyline per distinct value of `series`.
    Lines { x: usize, y: usize, series: Option<usize> },
}

#[derive(Debug, Serialize)]
pub struct Table {
    pub columns: Vec<&'static str>,
    #[serde(serialize_with = "ser_rows")]
    pub rows: Vec<Vec<f64>>,
    #[serde(skip)]
    pub plot: Plot,
    /// Column whose changes start a new block in `.dat` output.
    #[serde(skip)]
    pub block: Option<usize>,
}

#[derive(Debug, Serialize)]
pub struct Output {
    pub schema_version: &'static str,
    pub command: &'static str,
    pub inputs: Inputs,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<&'static str>,
    #[serde(flatten, skip_serializing_if = "Option::is_none")]
    pub table: Option<Table>,
    pub checks: Vec<CheckReport>,
}

impl Output {
    pub fn new(command: &'static str, inputs: Inputs) -> Self {
        Output {
            schema_version: SCHEMA_VERSION,
            command,
            inputs,
            notes: Vec::new(),
            table: None,
            checks: Vec::new(),
        }
    }

    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| !c.pass).count()
    }

    pub fn render(&self, format: Format) -> Result<String, CliError> {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).map_err(|e| CliError::Usage(e.to_string()))?;
                s.push('\n');
                Ok(s)
            }
            Format::Csv => Ok(match &self.table {
                Some(t) => table_csv(t),
                None => checks_csv(&self.checks),
            }),
            Format::Dat => self.table.as_ref().map(table_dat).ok_or_else(|| no_table(self.command, "dat")),
            Format::Svg => self.table.as_ref().map(svg).ok_or_else(|| no_table(self.command, "svg")),
        }
    }
}

fn no_table(command: &str, what: &str) -> CliError {
    CliError::Usage(format!("{command} produces no table to render as {what}"))
}

fn table_csv(t: &Table) -> String {
    let mut s = t.columns.join(",");
    s.push('\n');
    for row in &t.rows {
        let cells: Vec<String> = row.iter().map(|&x| fmt_float(x)).collect();
        s.push_str(&cells.join(","));
        s.push('\n');
    }
    s
}

fn checks_csv(checks: &[CheckReport]) -> String {
    let mut s = String::from("check_name,expected,observed,tolerance,comparison,pass,runtime_ms\n");
    for c in checks {
        let ms = c.runtime_ms.map(fmt_float).unwrap_or_default();
        let _ = writeln!(
            s,
            "{},{},{},{},{},{},{}",
            c.check_name,
            fmt_float(c.expected),
            fmt_float(c.observed),
            fmt_float(c.tolerance),
            c.comparison.as_str(),
            c.pass,
            ms
        );
    }
    s
}

fn table_dat(t: &Table) -> String {
    let mut s = format!("# {}\n", t.columns.join(" "));
    let mut last: Option<f64> = None;
    for row in &t.rows {
        if let Some(b) = t.block {
            if last.is_some_and(|v| v != row[b]) {
                s.push('\n');
            }
            last = Some(row[b]);
        }
        let cells: Vec<String> = row.iter().map(|&x| fmt_float(x)).collect();
        s.push_str(&cells.join(" "));
        s.push('\n');
    }
    s
}

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 480.0;
const MARGIN: f64 = 60.0;
const PALETTE: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

fn range(v: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = v
        .filter(|x| x.is_finite())
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), x| (a.min(x), b.max(x)));
    if lo >= hi {
        let c = if lo.is_finite() { lo } else { 0.0 };
        (c - 0.5, c + 0.5)
    } else {
        (lo, hi)
    }
}

fn axes(s: &mut String, xlabel: &str, ylabel: &str, (x0, x1): (f64, f64), (y0, y1): (f64, f64)) {
    let (w, h) = (WIDTH - 2.0 * MARGIN, HEIGHT - 2.0 * MARGIN);
    let _ = writeln!(s, r#"<rect x="{MARGIN}" y="{MARGIN}" width="{w}" height="{h}" fill="none" stroke="black"/>"#);
    let _ = writeln!(
        s,
        r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">{xlabel}</text>"#,
        WIDTH / 2.0,
        HEIGHT - 15.0
    );
    let _ = writeln!(
        s,
        r#"<text x="15" y="{:.1}" text-anchor="middle" transform="rotate(-90 15 {:.1})">{ylabel}</text>"#,
        HEIGHT / 2.0,
        HEIGHT / 2.0
    );
    for (x, y, anchor, v) in [
        (MARGIN, HEIGHT - MARGIN + 18.0, "start", x0),
        (WIDTH - MARGIN, HEIGHT - MARGIN + 18.0, "end", x1),
        (MARGIN - 5.0, HEIGHT - MARGIN, "end", y0),
        (MARGIN - 5.0, MARGIN + 10.0, "end", y1),
    ] {
        let _ = writeln!(s, r#"<text x="{x:.1}" y="{y:.1}" text-anchor="{anchor}" font-size="11">{v:.4}</text>"#);
    }
}

fn svg(t: &Table) -> String {
    let mut s = format!(
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" font-family="sans-serif" font-size="13">"#
    );
    s.push('\n');
    let (w, h) = (WIDTH - 2.0 * MARGIN, HEIGHT - 2.0 * MARGIN);
    match t.plot {
        Plot::Heatmap { x, y, z } => {
            let nx = t.rows.iter().take_while(|r| r[y] == t.rows[0][y]).count().max(1);
            let ny = (t.rows.len() / nx).max(1);
            let xr = range(t.rows.iter().map(|r| r[x]));
            let yr = range(t.rows.iter().map(|r| r[y]));
            let zmax = t.rows.iter().map(|r| r[z]).filter(|v| v.is_finite()).fold(0.0, f64::max);
            let (cw, ch) = (w / nx as f64, h / ny as f64);
            for (k, row) in t.rows.iter().enumerate() {
                let (i, j) = (k % nx, k / nx);
                let v = if zmax > 0.0 { (row[z] / zmax).clamp(0.0, 1.0) } else { 0.0 };
                let _ = writeln!(
                    s,
                    r#"<rect x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}" fill="{}"/>"#,
                    MARGIN + i as f64 * cw,
                    HEIGHT - MARGIN - (j + 1) as f64 * ch,
                    cw + 0.05,
                    ch + 0.05,
                    heat(v)
                );
            }
            axes(&mut s, t.columns[x], t.columns[y], xr, yr);
        }
        Plot::Lines { x, y, series } => {
            let xr = range(t.rows.iter().map(|r| r[x]));
            let yr = range(t.rows.iter().map(|r| r[y]));
            let mut groups: Vec<(f64, Vec<(f64, f64)>)> = Vec::new();
            for row in &t.rows {
                let key = series.map_or(0.0, |c| row[c]);
                match groups.iter_mut().find(|g| g.0 == key) {
                    Some(g) => g.1.push((row[x], row[y])),
                    None => groups.push((key, vec![(row[x], row[y])])),
                }
            }
            for (g, (key, pts)) in groups.iter().enumerate() {
                let color = PALETTE[g % PALETTE.len()];
                let mut path = String::new();
                for &(px, py) in pts.iter().filter(|p| p.1.is_finite()) {
                    let sx = MARGIN + (px - xr.0) / (xr.1 - xr.0) * w;
                    let sy = HEIGHT - MARGIN - (py - yr.0) / (yr.1 - yr.0) * h;
                    let _ = write!(path, "{sx:.2},{sy:.2} ");
                }
                let _ = writeln!(
                    s,
                    r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="1.5"/>"#,
                    path.trim_end()
                );
                if let Some(c) = series {
                    let _ = writeln!(
                        s,
                        r#"<text x="{:.1}" y="{:.1}" fill="{color}" text-anchor="end">{} = {key}</text>"#,
                        WIDTH - MARGIN - 8.0,
                        MARGIN + 18.0 * (g + 1) as f64,
                        t.columns[c]
                    );
                }
            }
            axes(&mut s, t.columns[x], t.columns[y], xr, yr);
        }
    }
    s.push_str("</svg>\n");
    s
}

/// Dark blue through yellow.
fn heat(v: f64) -> String {
    let lerp = |a: f64, b: f64| (a + (b - a) * v).round() as u8;
    format!("#{:02x}{:02x}{:02x}", lerp(20.0, 250.0), lerp(20.0, 230.0), lerp(90.0, 40.0))
}

pub fn emit(text: &str, path: Option<&Path>) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_carry_17_digits() {
        assert_eq!(fmt_float(0.1), "1.0000000000000001e-1");
        assert_eq!(fmt_float(-2.0), "-2.0000000000000000e0");
        assert_eq!(raw_float(f64::NAN).get(), "null");
    }

    fn table() -> Table {
        Table {
            columns: vec!["a", "b"],
            rows: vec![vec![0.0, 1.0], vec![0.0, 2.0], vec![1.0, 3.0]],
            plot: Plot::Lines { x: 0, y: 1, series: None },
            block: Some(0),
        }
    }

    #[test]
    fn dat_blocks_split_on_key_change() {
        let d = table_dat(&table());
        assert_eq!(d.lines().filter(|l| l.is_empty()).count(), 1);
        assert!(d.starts_with("# a b\n"));
    }

    #[test]
    fn json_carries_schema_version_and_raw_floats() {
        let mut o = Output::new("x", crate::report::inputs().num("tau_i", 0.5).build());
        o.table = Some(table());
        let j = o.render(Format::Json).unwrap();
        let v: serde_json::Value = serde_json::from_str(&j).unwrap();
        assert_eq!(v["schema_version"], "1");
        assert_eq!(v["rows"][2][1], 3.0);
        assert!(j.contains("5.0000000000000000e-1"));
    }

    #[test]
    fn svg_is_a_document() {
        let s = svg(&table());
        assert!(s.starts_with("<svg") && s.ends_with("</svg>\n"));
    }
}
