//! Report tables with provenance headers and deterministic serialization.
//!
//! Every output artefact is a [`ReportTable`]: named columns, typed cells
//! and a provenance block (command, config echo, input digests, config hash,
//! row count). Serialization is bit-reproducible from (input digest, config):
//! floats are written with 12 significant digits, NA cells carry a
//! machine-readable reason code, and nothing time- or path-dependent enters
//! the output.

mod commands;

pub use commands::{cmd_decompose, cmd_hedge, cmd_stats, cmd_subsample, CommandOutput};

use chrono::NaiveDate;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::metric::{MetricValue, NaReason};

/// Hex-encoded SHA-256 digest, used for input files and config hashes.
pub fn sha256_hex(data: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(data);
    hasher
        .finalize()
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

/// Formats with `digits` significant digits, plain decimal for moderate
/// exponents and scientific notation otherwise; trailing zeros are trimmed
/// so the rendering is canonical.
pub fn format_significant(value: f64, digits: usize) -> String {
    assert!(digits >= 1);
    if value == 0.0 {
        return "0".to_string();
    }
    debug_assert!(value.is_finite(), "only finite values are serialized");
    let formatted = format!("{:.*e}", digits - 1, value);
    let (mantissa, exponent) = formatted.split_once('e').expect("exponential format");
    let exponent: i32 = exponent.parse().expect("exponent");
    let negative = mantissa.starts_with('-');
    let digit_run: String = mantissa.chars().filter(|c| c.is_ascii_digit()).collect();

    let body = if (0..=14).contains(&exponent) {
        let int_len = exponent as usize + 1;
        if int_len >= digit_run.len() {
            format!("{}{}", digit_run, "0".repeat(int_len - digit_run.len()))
        } else {
            let fraction = digit_run[int_len..].trim_end_matches('0');
            if fraction.is_empty() {
                digit_run[..int_len].to_string()
            } else {
                format!("{}.{}", &digit_run[..int_len], fraction)
            }
        }
    } else if (-4..0).contains(&exponent) {
        let leading = "0".repeat((-exponent - 1) as usize);
        let all = format!("{leading}{digit_run}");
        format!("0.{}", all.trim_end_matches('0'))
    } else {
        let fraction = digit_run[1..].trim_end_matches('0');
        if fraction.is_empty() {
            format!("{}e{}", &digit_run[..1], exponent)
        } else {
            format!("{}.{}e{}", &digit_run[..1], fraction, exponent)
        }
    };
    if negative {
        format!("-{body}")
    } else {
        body
    }
}

const FLOAT_DIGITS: usize = 12;

/// A typed table cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Text(String),
    Int(i64),
    Float(f64),
    Date(NaiveDate),
    Na(NaReason),
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Text(s) => {
                debug_assert!(
                    !s.contains([',', '"', '\n']),
                    "cell text must not need csv escaping"
                );
                s.clone()
            }
            Cell::Int(i) => i.to_string(),
            Cell::Float(x) => format_significant(*x, FLOAT_DIGITS),
            Cell::Date(d) => d.to_string(),
            Cell::Na(reason) => format!("NA:{}", reason.code()),
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Cell::Text(s) => Value::String(s.clone()),
            Cell::Int(i) => json!(i),
            Cell::Float(x) => {
                // round to the serialized precision so csv and json agree
                let rounded: f64 = format_significant(*x, FLOAT_DIGITS)
                    .parse()
                    .expect("round-trip");
                json!(rounded)
            }
            Cell::Date(d) => Value::String(d.to_string()),
            Cell::Na(reason) => Value::String(format!("NA:{}", reason.code())),
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Float(x)
    }
}

impl From<usize> for Cell {
    fn from(i: usize) -> Self {
        Cell::Int(i as i64)
    }
}

impl From<NaiveDate> for Cell {
    fn from(d: NaiveDate) -> Self {
        Cell::Date(d)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

impl From<MetricValue> for Cell {
    fn from(m: MetricValue) -> Self {
        match m {
            MetricValue::Value(v) => Cell::Float(v),
            MetricValue::Na(reason) => Cell::Na(reason),
        }
    }
}

/// Run identity echoed into every output.
#[derive(Debug, Clone, PartialEq)]
pub struct Provenance {
    pub command: String,
    /// Ordered key=value echo of the run configuration.
    pub config: Vec<(String, String)>,
    /// (input name, sha256 digest) pairs.
    pub inputs: Vec<(String, String)>,
}

impl Provenance {
    pub fn new(command: &str) -> Self {
        Self {
            command: command.to_string(),
            config: Vec::new(),
            inputs: Vec::new(),
        }
    }

    pub fn config(mut self, key: &str, value: impl ToString) -> Self {
        self.config.push((key.to_string(), value.to_string()));
        self
    }

    pub fn input(mut self, name: &str, digest: &str) -> Self {
        self.inputs.push((name.to_string(), digest.to_string()));
        self
    }

    fn canonical(&self) -> String {
        let mut text = format!("command={}\n", self.command);
        for (k, v) in &self.config {
            text.push_str(&format!("config {k}={v}\n"));
        }
        for (name, digest) in &self.inputs {
            text.push_str(&format!("input {name}={digest}\n"));
        }
        text
    }

    pub fn config_hash(&self) -> String {
        sha256_hex(self.canonical().as_bytes())
    }
}

/// A named table plus its provenance.
#[derive(Debug, Clone, PartialEq)]
pub struct ReportTable {
    pub name: String,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    pub provenance: Provenance,
}

impl ReportTable {
    pub fn new(name: &str, columns: Vec<&'static str>, provenance: Provenance) -> Self {
        Self {
            name: name.to_string(),
            columns,
            rows: Vec::new(),
            provenance,
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len(), "uniform column count");
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let p = &self.provenance;
        let mut out = String::new();
        out.push_str(&format!("# provenance: command={}\n", p.command));
        for (k, v) in &p.config {
            out.push_str(&format!("# provenance: config {k}={v}\n"));
        }
        for (name, digest) in &p.inputs {
            out.push_str(&format!("# provenance: input {name}={digest}\n"));
        }
        out.push_str(&format!("# provenance: config_hash={}\n", p.config_hash()));
        out.push_str(&format!("# provenance: rows={}\n", self.rows.len()));
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let rendered: Vec<String> = row.iter().map(Cell::render).collect();
            out.push_str(&rendered.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        let p = &self.provenance;
        let value = json!({
            "name": self.name,
            "provenance": {
                "command": p.command,
                "config": p.config.iter()
                    .map(|(k, v)| json!([k, v])).collect::<Vec<_>>(),
                "inputs": p.inputs.iter()
                    .map(|(k, v)| json!([k, v])).collect::<Vec<_>>(),
                "config_hash": p.config_hash(),
                "rows": self.rows.len(),
            },
            "columns": self.columns,
            "rows": self.rows.iter()
                .map(|r| Value::Array(r.iter().map(Cell::to_json).collect()))
                .collect::<Vec<_>>(),
        });
        let mut text = serde_json::to_string_pretty(&value).expect("json serialization");
        text.push('\n');
        text
    }
}
