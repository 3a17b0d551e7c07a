//! Rendering of command results as JSON, CSV or a human-readable listing.

use std::io::Write;

use serde_json::Value;

use crate::cli::OutputFormat;

#[derive(Debug, Clone, PartialEq)]
pub enum Line {
    Title(String),
    Field(String, String),
    Status(bool, String),
    Text(String),
}

/// Everything a command produces; the format decides which part is shown.
#[derive(Debug, Clone)]
pub struct Report {
    pub json: Value,
    pub headers: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
    pub pretty: Vec<Line>,
    /// Set when a verification did not pass (exit code 3).
    pub failed: bool,
}

impl Report {
    pub fn new(json: Value) -> Self {
        Self { json, headers: Vec::new(), rows: Vec::new(), pretty: Vec::new(), failed: false }
    }

    pub fn table(mut self, headers: Vec<&'static str>, rows: Vec<Vec<String>>) -> Self {
        self.headers = headers;
        self.rows = rows;
        self
    }

    pub fn line(&mut self, line: Line) {
        self.pretty.push(line);
    }

    pub fn number(&mut self, name: impl Into<String>, value: f64) {
        self.pretty.push(Line::Field(name.into(), num(value)));
    }

    pub fn field(&mut self, name: impl Into<String>, value: impl ToString) {
        self.pretty.push(Line::Field(name.into(), value.to_string()));
    }

    pub fn render(&self, format: OutputFormat, color: bool, out: &mut impl Write) -> std::io::Result<()> {
        match format {
            OutputFormat::Json => writeln!(out, "{}", self.json),
            OutputFormat::Csv => {
                let mut w = csv::Writer::from_writer(out);
                w.write_record(&self.headers)?;
                for row in &self.rows {
                    w.write_record(row)?;
                }
                w.flush()
            }
            OutputFormat::Pretty => {
                let width = self
                    .pretty
                    .iter()
                    .filter_map(|l| match l {
                        Line::Field(k, _) => Some(k.chars().count()),
                        _ => None,
                    })
                    .max()
                    .unwrap_or(0);
                for line in &self.pretty {
                    match line {
                        Line::Title(s) => writeln!(out, "{}", paint(color, "1", s))?,
                        Line::Field(k, v) => {
                            let pad = width - k.chars().count();
                            writeln!(out, "  {}{}  {v}", paint(color, "36", k), " ".repeat(pad))?
                        }
                        Line::Status(ok, s) => {
                            let (code, tag) = if *ok { ("32", "PASS") } else { ("31", "FAIL") };
                            writeln!(out, "{} {s}", paint(color, code, tag))?
                        }
                        Line::Text(s) => writeln!(out, "  {s}")?,
                    }
                }
                Ok(())
            }
        }
    }
}

fn paint(color: bool, code: &str, s: &str) -> String {
    if color {
        format!("\x1b[{code}m{s}\x1b[0m")
    } else {
        s.to_string()
    }
}

/// CSV cell for an optional number.
pub fn cell(x: Option<f64>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

/// Pretty value for an optional number.
pub fn show(x: Option<f64>) -> String {
    x.map_or_else(|| "-".to_string(), num)
}

/// Plain notation for moderate magnitudes, scientific otherwise.
pub fn num(v: f64) -> String {
    if v != 0.0 && (v.abs() < 1e-4 || v.abs() >= 1e6) {
        format!("{v:e}")
    } else {
        format!("{v}")
    }
}
