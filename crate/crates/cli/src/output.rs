//! Rendering, atomic report files and the on-disk report cache.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::ValueEnum;
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::{Command, Outcome, RunConfig, TableChoice};

/// Directory for cached reports; unset means no caching.
pub const CACHE_ENV: &str = "THETA_CACHE_DIR";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

pub(crate) fn validate(cfg: &RunConfig) -> Result<(), String> {
    if cfg.output.format != Format::Csv {
        return Ok(());
    }
    match &cfg.command {
        Command::Tables { table: TableChoice::All, .. } => Err("csv needs a single table: pass --table 1 or --table 2".into()),
        Command::Tables { .. } | Command::ThetaSpectrum { .. } => Ok(()),
        other => Err(format!("csv output is available for tables and theta-spectrum, not {}", other.name())),
    }
}

fn cache_path(cmd: &Command) -> Option<PathBuf> {
    let dir = std::env::var_os(CACHE_ENV)?;
    let mut h = Sha256::new();
    h.update(env!("CARGO_PKG_VERSION").as_bytes());
    h.update(cmd.describe().as_bytes());
    let key: String = h.finalize().iter().map(|b| format!("{b:02x}")).collect();
    Some(Path::new(&dir).join(format!("{}-{key}.json", cmd.name())))
}

pub(crate) fn cache_lookup(cmd: &Command) -> Option<Value> {
    let text = fs::read_to_string(cache_path(cmd)?).ok()?;
    serde_json::from_str(&text).ok()
}

/// Best effort: a cache that cannot be written is skipped.
pub(crate) fn cache_store(cmd: &Command, report: &Value) {
    if let Some(path) = cache_path(cmd) {
        let _ = path.parent().map(fs::create_dir_all);
        let _ = write_atomic(&path, &json_text(report));
    }
}

fn write_atomic(path: &Path, text: &str) -> io::Result<()> {
    let tmp = path.with_extension(format!("tmp-{}", std::process::id()));
    fs::write(&tmp, text)?;
    fs::rename(&tmp, path)
}

fn json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

fn csv_rows(rows: &Value) -> io::Result<String> {
    let rows = rows.as_array().map(Vec::as_slice).unwrap_or_default();
    let mut w = csv::Writer::from_writer(Vec::new());
    if let Some(first) = rows.first().and_then(Value::as_object) {
        w.write_record(first.keys())?;
    }
    for row in rows {
        let cells = row.as_object().into_iter().flat_map(|o| o.values()).map(|v| match v {
            Value::String(s) => s.clone(),
            other => other.to_string(),
        });
        w.write_record(cells)?;
    }
    let bytes = w.into_inner().map_err(|e| io::Error::other(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("utf-8 cells"))
}

fn series_rows(report: &Value) -> Value {
    let series = &report["series"];
    let graded = series.get("graded").and_then(Value::as_array);
    let rows = graded.or_else(|| series["entries"].as_array()).cloned().unwrap_or_default();
    Value::Array(
        rows.into_iter()
            .map(|e| serde_json::json!({ "degree": e["degree"], "label": e["label"], "multiplicity": e["multiplicity"] }))
            .collect(),
    )
}

fn table_key(t: TableChoice) -> &'static str {
    match t {
        TableChoice::Singular => "singular",
        _ => "highest_weight",
    }
}

fn text(cfg: &RunConfig, report: &Value) -> io::Result<String> {
    if let Command::Tables { table, .. } = cfg.command {
        let keys: &[TableChoice] = match table {
            TableChoice::All => &[TableChoice::HighestWeight, TableChoice::Singular],
            _ => std::slice::from_ref(&table),
        };
        let mut out = String::new();
        for &t in keys {
            out.push_str(&format!("# {}\n", table_key(t)));
            out.push_str(&csv_rows(&report[table_key(t)])?);
        }
        return Ok(out);
    }
    let mut out = format!(
        "{}: {}\n",
        report["kind"].as_str().unwrap_or("report"),
        report["verdict"].as_str().unwrap_or("none")
    );
    if let Some(e) = report.get("error").and_then(Value::as_str) {
        out.push_str(&format!("  error: {e}\n"));
    }
    for c in report.get("checks").and_then(Value::as_array).into_iter().flatten() {
        let mark = if c["passed"].as_bool() == Some(true) { "pass" } else { "FAIL" };
        out.push_str(&format!("  [{mark}] {}: {}\n", c["name"].as_str().unwrap_or(""), c["detail"].as_str().unwrap_or("")));
    }
    if let Some(d) = report.get("difference").and_then(|d| d.get("entries")).and_then(Value::as_array) {
        out.push_str(&format!("  difference: {} entries\n", d.len()));
    }
    Ok(out)
}

pub(crate) fn render(cfg: &RunConfig, outcome: &Outcome) -> io::Result<String> {
    let report = &outcome.report;
    match cfg.output.format {
        Format::Json => Ok(json_text(report)),
        Format::Text => text(cfg, report),
        Format::Csv if report["kind"] == "error" => Ok(json_text(report)),
        Format::Csv => match cfg.command {
            Command::Tables { table, .. } => csv_rows(&report[table_key(table)]),
            _ => csv_rows(&series_rows(report)),
        },
    }
}

pub(crate) fn emit(cfg: &RunConfig, outcome: &Outcome) -> io::Result<()> {
    let text = render(cfg, outcome)?;
    match &cfg.output.out {
        Some(path) => write_atomic(path, &text),
        None => io::stdout().lock().write_all(text.as_bytes()),
    }
}
