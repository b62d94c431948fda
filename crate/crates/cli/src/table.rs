//! Table rendering: text for humans, CSV and JSON for scripts. The three
//! formats carry identical values; `elapsed_ms` is the only
//! non-deterministic field.

use clap::ValueEnum;
use serde_json::json;

use idom_core::{ProductKind, SolveMethod};

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

pub struct RowData {
    pub gamma: u32,
    pub method: SolveMethod,
    pub lower: u32,
    pub upper: u32,
    pub closed_form_match: bool,
    pub elapsed_ms: u128,
}

pub struct Row {
    pub kind: ProductKind,
    pub m: usize,
    pub n: usize,
    /// Per-row failures (cap refusals) are annotated, not fatal.
    pub outcome: Result<RowData, String>,
}

pub const CSV_HEADER: &str = "kind,m,n,gamma,method,lower,upper,closed_form_match,elapsed_ms";

pub fn render_text(rows: &[Row]) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "{:<10} {:>3} {:>3} {:>6} {:<16} {:>6} {:>6} {:<12} {:>8}\n",
        "kind", "m", "n", "gamma", "method", "lower", "upper", "closed_form", "ms"
    ));
    for row in rows {
        match &row.outcome {
            Ok(data) => out.push_str(&format!(
                "{:<10} {:>3} {:>3} {:>6} {:<16} {:>6} {:>6} {:<12} {:>8}\n",
                row.kind.as_str(),
                row.m,
                row.n,
                data.gamma,
                data.method.as_str(),
                data.lower,
                data.upper,
                if data.closed_form_match { "yes" } else { "no" },
                data.elapsed_ms
            )),
            Err(msg) => out.push_str(&format!(
                "{:<10} {:>3} {:>3} error: {msg}\n",
                row.kind.as_str(),
                row.m,
                row.n
            )),
        }
    }
    out
}

fn csv_field(value: &str) -> String {
    if value.contains([',', '"', '\n']) {
        format!("\"{}\"", value.replace('"', "\"\""))
    } else {
        value.to_string()
    }
}

pub fn render_csv(rows: &[Row]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for row in rows {
        match &row.outcome {
            Ok(data) => out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{}\n",
                row.kind.as_str(),
                row.m,
                row.n,
                data.gamma,
                data.method.as_str(),
                data.lower,
                data.upper,
                data.closed_form_match,
                data.elapsed_ms
            )),
            Err(msg) => out.push_str(&format!(
                "{},{},{},,{},,,,\n",
                row.kind.as_str(),
                row.m,
                row.n,
                csv_field(&format!("error: {msg}"))
            )),
        }
    }
    out
}

pub fn render_json(rows: &[Row]) -> String {
    let values: Vec<serde_json::Value> = rows
        .iter()
        .map(|row| match &row.outcome {
            Ok(data) => json!({
                "kind": row.kind.as_str(),
                "m": row.m,
                "n": row.n,
                "gamma": data.gamma,
                "method": data.method.as_str(),
                "lower": data.lower,
                "upper": data.upper,
                "closed_form_match": data.closed_form_match,
                "elapsed_ms": data.elapsed_ms as u64,
            }),
            Err(msg) => json!({
                "kind": row.kind.as_str(),
                "m": row.m,
                "n": row.n,
                "error": format!("error: {msg}"),
            }),
        })
        .collect();
    let mut out = serde_json::to_string_pretty(&values).expect("rows serialize");
    out.push('\n');
    out
}
