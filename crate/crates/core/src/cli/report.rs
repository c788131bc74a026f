use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use clap::ValueEnum;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::montecarlo::KsReport;
use crate::verifier::ResidualReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
}

/// Underlying module report carried alongside the summary fields.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Detail {
    Residual(ResidualReport),
    Ks(KsReport),
    TypoProbe {
        proof_consistent: ResidualReport,
        printed: ResidualReport,
    },
}

/// Machine-readable summary of one verification run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    pub family: String,
    pub params: Map<String, Value>,
    pub statistic: f64,
    pub threshold: Option<f64>,
    pub tolerance: Option<f64>,
    pub pass: bool,
    pub seed: Option<u64>,
    pub grid_or_sample_size: usize,
    /// Only filled in with `--timing`, so that reports are reproducible.
    pub wall_time_ms: Option<f64>,
    pub detail: Detail,
}

const CSV_HEADER: &str = "command,family,statistic,threshold,tolerance,pass,seed,grid_or_sample_size,wall_time_ms";

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

impl RunReport {
    fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.command,
            self.family,
            format_decimal(self.statistic),
            opt(self.threshold.map(format_decimal)),
            opt(self.tolerance.map(format_decimal)),
            self.pass,
            opt(self.seed),
            self.grid_or_sample_size,
            opt(self.wall_time_ms),
        )
    }
}

/// Writes reports as JSON lines (one object per line) or CSV with a header.
pub fn write_reports<W: Write + ?Sized>(reports: &[RunReport], format: OutputFormat, out: &mut W) -> io::Result<()> {
    match format {
        OutputFormat::Json => {
            for r in reports {
                serde_json::to_writer(&mut *out, r)?;
                writeln!(out)?;
            }
        }
        OutputFormat::Csv => {
            writeln!(out, "{CSV_HEADER}")?;
            for r in reports {
                writeln!(out, "{}", r.csv_row())?;
            }
        }
    }
    Ok(())
}

/// Writes one report to `path`, or to `fallback` when no path is given.
pub fn write_report(
    report: &RunReport,
    format: OutputFormat,
    path: Option<&Path>,
    fallback: &mut dyn Write,
) -> io::Result<()> {
    with_sink(path, fallback, |w| write_reports(std::slice::from_ref(report), format, w))
}

/// Sample draws as CSV, header `index,value`.
pub fn write_samples_csv<W: Write + ?Sized>(values: &[f64], out: &mut W) -> io::Result<()> {
    writeln!(out, "index,value")?;
    for (i, v) in values.iter().enumerate() {
        writeln!(out, "{i},{}", format_decimal(*v))?;
    }
    Ok(())
}

pub(crate) fn with_sink<F>(path: Option<&Path>, fallback: &mut dyn Write, f: F) -> io::Result<()>
where
    F: FnOnce(&mut dyn Write) -> io::Result<()>,
{
    match path {
        Some(p) => {
            let mut w = BufWriter::new(File::create(p)?);
            f(&mut w)?;
            w.flush()
        }
        None => f(fallback),
    }
}

/// Decimal text with 15 significant digits; scientific notation outside
/// `[1e-4, 1e15)`.
pub fn format_decimal(v: f64) -> String {
    const SIG: i32 = 15;
    if !v.is_finite() {
        return v.to_string();
    }
    if v == 0.0 {
        return "0.0".to_string();
    }
    let mag = v.abs().log10().floor() as i32;
    if (-4..15).contains(&mag) {
        let decimals = (SIG - 1 - mag).max(0) as usize;
        format!("{v:.decimals$}")
    } else {
        format!("{v:.*e}", (SIG - 1) as usize)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimal_has_enough_digits() {
        for v in [1.0 / 3.0, -2.5, 123456.789, 7.1e-5, 3.3e20, 0.0012345678901234] {
            let s = format_decimal(v);
            let digits = s
                .split(['e', 'E'])
                .next()
                .unwrap()
                .chars()
                .filter(char::is_ascii_digit)
                .collect::<String>();
            assert!(digits.trim_start_matches('0').len() >= 12, "{v} -> {s}");
            let back: f64 = s.parse().unwrap();
            assert!((back - v).abs() <= 1e-13 * v.abs(), "{v} -> {s}");
        }
    }

    #[test]
    fn sample_csv_lines() {
        let mut buf = Vec::new();
        write_samples_csv(&[0.1, -1.0, 2.0], &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 4);
        assert_eq!(text.lines().next(), Some("index,value"));
    }
}
