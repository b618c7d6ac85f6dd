//! Deterministic tabular output: CSV with a '#'-prefixed configuration echo,
//! or JSON with a {meta, columns, rows} schema. Identical configurations
//! produce byte-identical files.

use std::io::Write;
use std::path::Path;

use crate::config::Format;
use crate::scans::ScanResult;

/// One value at `precision` significant digits, scientific notation; the
/// null marker for singular cells is `NA`.
fn format_cell(value: Option<f64>, precision: u32) -> String {
    match value {
        Some(v) => format!("{:.*e}", precision.saturating_sub(1) as usize, v),
        None => "NA".to_string(),
    }
}

pub fn render_csv(meta: &[(String, String)], result: &ScanResult, precision: u32) -> String {
    let mut out = String::new();
    for (key, value) in meta {
        out.push_str(&format!("# {key} = {value}\n"));
    }
    out.push_str(&result.columns.join(","));
    out.push('\n');
    for row in &result.rows {
        let cells: Vec<String> = row.iter().map(|c| format_cell(*c, precision)).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

pub fn render_json(meta: &[(String, String)], result: &ScanResult) -> String {
    let meta_obj: serde_json::Map<String, serde_json::Value> = meta
        .iter()
        .map(|(k, v)| (k.clone(), serde_json::Value::String(v.clone())))
        .collect();
    let rows: Vec<serde_json::Value> = result
        .rows
        .iter()
        .map(|row| {
            serde_json::Value::Array(
                row.iter()
                    .map(|c| match c {
                        Some(v) => serde_json::json!(v),
                        None => serde_json::Value::Null,
                    })
                    .collect(),
            )
        })
        .collect();
    let doc = serde_json::json!({
        "meta": meta_obj,
        "columns": result.columns,
        "rows": rows,
    });
    let mut text = serde_json::to_string_pretty(&doc).expect("serializable");
    text.push('\n');
    text
}

pub fn render(
    meta: &[(String, String)],
    result: &ScanResult,
    format: Format,
    precision: u32,
) -> String {
    match format {
        Format::Csv => render_csv(meta, result, precision),
        Format::Json => render_json(meta, result),
    }
}

/// Write to the given path, or stdout when no path is configured.
pub fn write_output(text: &str, path: Option<&Path>) -> Result<(), String> {
    match path {
        Some(p) => std::fs::write(p, text)
            .map_err(|e| format!("cannot write '{}': {e}", p.display())),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| format!("cannot write to stdout: {e}")),
    }
}
