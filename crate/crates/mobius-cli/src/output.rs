//! Deterministic rendering of tables and check reports. Rows are always
//! pre-sorted by the caller; rationals arrive as exact `p/q` strings.

use mobius_core::report::CheckReport;
use serde_json::{json, Value};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

impl Format {
    pub fn parse(s: &str) -> Option<Format> {
        match s {
            "json" => Some(Format::Json),
            "csv" => Some(Format::Csv),
            "pretty" => Some(Format::Pretty),
            _ => None,
        }
    }
}

pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

fn csv_escape(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn render_table(table: &Table, format: Format) -> String {
    match format {
        Format::Json => {
            let rows: Vec<Value> = table
                .rows
                .iter()
                .map(|row| {
                    let mut obj = serde_json::Map::new();
                    for (col, cell) in table.columns.iter().zip(row) {
                        obj.insert(col.clone(), Value::String(cell.clone()));
                    }
                    Value::Object(obj)
                })
                .collect();
            serde_json::to_string_pretty(&Value::Array(rows)).expect("serializable")
        }
        Format::Csv => {
            let mut out = String::new();
            out.push_str(&table.columns.join(","));
            out.push('\n');
            for row in &table.rows {
                let cells: Vec<String> = row.iter().map(|c| csv_escape(c)).collect();
                out.push_str(&cells.join(","));
                out.push('\n');
            }
            out
        }
        Format::Pretty => {
            let mut widths: Vec<usize> = table.columns.iter().map(|c| c.len()).collect();
            for row in &table.rows {
                for (i, cell) in row.iter().enumerate() {
                    widths[i] = widths[i].max(cell.chars().count());
                }
            }
            let mut out = String::new();
            for (i, col) in table.columns.iter().enumerate() {
                if i > 0 {
                    out.push_str("  ");
                }
                out.push_str(&format!("{:width$}", col, width = widths[i]));
            }
            out.push('\n');
            for row in &table.rows {
                for (i, cell) in row.iter().enumerate() {
                    if i > 0 {
                        out.push_str("  ");
                    }
                    out.push_str(&format!("{:width$}", cell, width = widths[i]));
                }
                out.push('\n');
            }
            out
        }
    }
}

pub fn report_to_json(report: &CheckReport) -> Value {
    json!({
        "instance": report.instance,
        "check": report.check,
        "squares": report
            .squares
            .iter()
            .map(|e| {
                json!({
                    "id": e.id,
                    "pass": e.pass,
                    "witness": e.witness.as_ref().map(|k| k.as_str().to_string()),
                })
            })
            .collect::<Vec<Value>>(),
    })
}

pub fn render_reports(reports: &[CheckReport], format: Format) -> String {
    match format {
        Format::Json => {
            let values: Vec<Value> = reports.iter().map(report_to_json).collect();
            serde_json::to_string_pretty(&Value::Array(values)).expect("serializable")
        }
        Format::Csv => {
            let mut table = Table {
                columns: vec![
                    "instance".into(),
                    "check".into(),
                    "id".into(),
                    "pass".into(),
                    "witness".into(),
                ],
                rows: Vec::new(),
            };
            for r in reports {
                for e in &r.squares {
                    table.rows.push(vec![
                        r.instance.clone(),
                        r.check.clone(),
                        e.id.clone(),
                        e.pass.to_string(),
                        e.witness
                            .as_ref()
                            .map(|k| k.as_str().to_string())
                            .unwrap_or_default(),
                    ]);
                }
            }
            render_table(&table, Format::Csv)
        }
        Format::Pretty => {
            let mut out = String::new();
            for r in reports {
                let status = if r.passed() { "pass" } else { "FAIL" };
                out.push_str(&format!("[{status}] {} / {}\n", r.instance, r.check));
                for e in &r.squares {
                    if e.pass {
                        continue;
                    }
                    match &e.witness {
                        Some(w) => out.push_str(&format!("    failed {} at {}\n", e.id, w)),
                        None => out.push_str(&format!("    failed {}\n", e.id)),
                    }
                }
            }
            out
        }
    }
}

pub fn render_single(fields: &[(&str, String)], format: Format) -> String {
    match format {
        Format::Json => {
            let mut obj = serde_json::Map::new();
            for (k, v) in fields {
                obj.insert((*k).to_string(), Value::String(v.clone()));
            }
            serde_json::to_string(&Value::Object(obj)).expect("serializable")
        }
        Format::Csv => {
            let mut out = String::new();
            out.push_str(
                &fields
                    .iter()
                    .map(|(k, _)| (*k).to_string())
                    .collect::<Vec<_>>()
                    .join(","),
            );
            out.push('\n');
            out.push_str(
                &fields
                    .iter()
                    .map(|(_, v)| csv_escape(v))
                    .collect::<Vec<_>>()
                    .join(","),
            );
            out.push('\n');
            out
        }
        Format::Pretty => {
            let mut out = String::new();
            for (k, v) in fields {
                out.push_str(&format!("{k} = {v}\n"));
            }
            out
        }
    }
}
