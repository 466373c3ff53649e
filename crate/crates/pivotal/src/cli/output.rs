//! Output plumbing for the command-line surface: row records with their
//! serialized field names, scientific-notation formatting, and the CSV/JSON
//! emitters.

use serde::Serialize;

/// Machine-readable output formats.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
    Text,
}

/// One row of `power` output.
#[derive(Debug, Serialize)]
pub struct PowerRow {
    pub n: u64,
    pub scheme: String,
    pub method: String,
    pub power: f64,
    pub approx: Option<f64>,
    pub rel_dev: Option<f64>,
}

/// One row of `figure` output.
#[derive(Debug, Serialize)]
pub struct FigureRow {
    pub population: u64,
    pub scheme: String,
    pub method: String,
    pub power: f64,
    pub approx: f64,
    pub rel_dev: f64,
}

/// One row of `allocate` output.
#[derive(Debug, Serialize)]
pub struct AllocateRow {
    pub name: String,
    pub population: u64,
    pub weight: f64,
}

/// One row of `allocate --report` output.
#[derive(Debug, Serialize)]
pub struct ReportRow {
    pub name: String,
    pub population: u64,
    pub binary_power: f64,
    pub ternary_power: f64,
    pub power_ratio: f64,
    pub weight_sqrt: f64,
    pub weight_binary: f64,
    pub weight_ternary: f64,
}

/// Scientific notation with `sig` significant digits (`sig >= 1`).
pub fn sci(x: f64, sig: usize) -> String {
    format!("{:.*e}", sig.saturating_sub(1), x)
}

/// Like [`sci`], but an absent value becomes an empty field.
pub fn sci_opt(x: Option<f64>, sig: usize) -> String {
    x.map(|v| sci(v, sig)).unwrap_or_default()
}

/// Print a CSV table: pinned header, then one line per row.
pub fn emit_csv(header: &str, lines: &[String]) {
    println!("{header}");
    for line in lines {
        println!("{line}");
    }
}

/// Print rows as one JSON array of objects. Numbers are emitted at full
/// round-trip precision regardless of `--precision`, which only governs
/// the textual formats.
pub fn emit_json<T: Serialize>(rows: &[T]) {
    println!(
        "{}",
        serde_json::to_string_pretty(rows).expect("output rows always serialize")
    );
}
