//! JSON and Markdown rendering, and atomic report files.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

use serde::Serialize;
use serde_json::Value;

use crate::config::Format;
use crate::driver::Report;
use crate::tables::TableReport;
use crate::CliError;

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
    .replace('|', "\\|")
}

fn header(out: &mut String, title: &str, config: &impl Serialize, cache_hash: &Option<String>) {
    let _ = writeln!(
        out,
        "# {title}\n\n```json\n{}\n```\n",
        serde_json::to_string_pretty(config).expect("config serializes")
    );
    if let Some(h) = cache_hash {
        let _ = writeln!(out, "Count cache hash: `{h}`\n");
    }
}

pub fn render_report(report: &Report, format: Format) -> String {
    if format == Format::Json {
        return json(report);
    }
    let mut out = String::new();
    header(&mut out, "Verification report", &report.config, &report.cache_hash);
    let s = &report.summary;
    let _ = writeln!(
        out,
        "{} pass, {} fail, {} discrepancy{}\n",
        s.pass,
        s.fail,
        s.discrepancy,
        if report.complete { "" } else { " (partial: resource cap reached)" }
    );
    out.push_str("| check | status | lhs | rhs | witness |\n|---|---|---|---|---|\n");
    for c in &report.checks {
        let status = serde_json::to_value(c.status).expect("status serializes");
        let _ = writeln!(
            out,
            "| {} | {} | {} | {} | {} |",
            c.check,
            cell(&status),
            cell(&c.lhs),
            cell(&c.rhs),
            cell(&c.witness)
        );
    }
    out
}

pub fn render_table(t: &TableReport, format: Format) -> String {
    if format == Format::Json {
        return json(t);
    }
    let mut out = String::new();
    let title = serde_json::to_value(t.table).expect("table kind serializes");
    header(&mut out, &format!("Table {}", cell(&title)), &t.config, &t.cache_hash);
    let _ = writeln!(out, "| | {} |", t.cols.join(" | "));
    let _ = writeln!(out, "|---|{}", "---|".repeat(t.cols.len()));
    for (label, row) in t.rows.iter().zip(&t.values) {
        let _ = writeln!(out, "| {label} | {} |", row.join(" | "));
    }
    out
}

/// Writes `text` to `path` by atomic replacement, or to stdout.
pub fn emit(text: &str, path: Option<&Path>) -> Result<(), CliError> {
    let Some(path) = path else {
        std::io::stdout().write_all(text.as_bytes())?;
        return Ok(());
    };
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    std::fs::create_dir_all(dir)?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(text.as_bytes())?;
    tmp.persist(path).map_err(|e| CliError::Io(e.error))?;
    Ok(())
}
