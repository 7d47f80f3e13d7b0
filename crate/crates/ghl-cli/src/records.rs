//! Result records and the three output emitters (JSON, CSV, table). All
//! three render the same fields so downstream consumers can switch formats
//! without losing information.

use serde::{Deserialize, Serialize};

/// One computed (co)homology group: the invariant factors of H_n or H^n for
/// a fixed theory, group, and coefficient module.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComputeRecord {
    pub theory: String,
    pub group: String,
    pub module: String,
    pub degree: usize,
    /// Invariant factors as decimal strings: finite factors in ascending
    /// divisibility order, then one "0" per infinite cyclic summand. Empty
    /// means the trivial group.
    pub invariant_factors: Vec<String>,
    pub runtime_ms: u128,
}

/// Output format selector shared by every emitting command.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Table,
}

impl std::str::FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "table" => Ok(Format::Table),
            other => Err(format!("unknown format '{other}'; expected json, csv, or table")),
        }
    }
}

/// Renders records in the requested format. Records are emitted in the order
/// given; callers sort by degree first so output is deterministic.
pub fn render(records: &[ComputeRecord], format: Format) -> String {
    match format {
        Format::Json => render_json(records),
        Format::Csv => render_csv(records),
        Format::Table => render_table(records),
    }
}

fn render_json(records: &[ComputeRecord]) -> String {
    serde_json::to_string_pretty(records).expect("records serialize cleanly")
}

/// CSV with a header row; invariant factors are joined with `|` inside one
/// cell so the column count stays fixed.
fn render_csv(records: &[ComputeRecord]) -> String {
    let mut out = String::from("theory,group,module,degree,invariant_factors,runtime_ms\n");
    for r in records {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            csv_cell(&r.theory),
            csv_cell(&r.group),
            csv_cell(&r.module),
            r.degree,
            csv_cell(&r.invariant_factors.join("|")),
            r.runtime_ms,
        ));
    }
    out
}

fn csv_cell(text: &str) -> String {
    if text.contains(',') || text.contains('"') || text.contains('\n') {
        format!("\"{}\"", text.replace('"', "\"\""))
    } else {
        text.to_string()
    }
}

fn render_table(records: &[ComputeRecord]) -> String {
    let headers = ["theory", "group", "module", "degree", "group structure", "ms"];
    let rows: Vec<[String; 6]> = records
        .iter()
        .map(|r| {
            [
                r.theory.clone(),
                r.group.clone(),
                r.module.clone(),
                r.degree.to_string(),
                describe_factors(&r.invariant_factors),
                r.runtime_ms.to_string(),
            ]
        })
        .collect();
    let mut width = [0usize; 6];
    for (i, h) in headers.iter().enumerate() {
        width[i] = h.len();
    }
    for row in &rows {
        for (i, cell) in row.iter().enumerate() {
            width[i] = width[i].max(cell.len());
        }
    }
    let mut out = String::new();
    let mut line = String::new();
    for (i, h) in headers.iter().enumerate() {
        line.push_str(&format!("{:<w$}  ", h, w = width[i]));
    }
    out.push_str(line.trim_end());
    out.push('\n');
    for row in rows {
        let mut line = String::new();
        for (i, cell) in row.iter().enumerate() {
            line.push_str(&format!("{:<w$}  ", cell, w = width[i]));
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

/// Human-readable abelian group from its invariant factors: `0` for trivial,
/// `Z` for an infinite factor, `Z/m` otherwise, joined by ` + `.
pub fn describe_factors(factors: &[String]) -> String {
    if factors.is_empty() {
        return "0".to_string();
    }
    factors
        .iter()
        .map(|f| if f == "0" { "Z".to_string() } else { format!("Z/{f}") })
        .collect::<Vec<_>>()
        .join(" + ")
}
