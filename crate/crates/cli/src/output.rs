//! Report serialization for the `run` and `sweep` commands.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::config::Format;
use crate::error::HarnessError;
use crate::scenario::{report_values, CycleReport, REPORT_COLUMNS};
use crate::sweep::SweepTable;

/// Pretty JSON with a trailing newline; key order follows field order.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize to JSON");
    s.push('\n');
    s
}

fn csv_text(header: Vec<String>, rows: Vec<Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&header).expect("in-memory csv");
    for r in rows {
        w.write_record(&r).expect("in-memory csv");
    }
    String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf-8 csv")
}

pub fn report_csv(report: &CycleReport) -> String {
    csv_text(
        REPORT_COLUMNS.iter().map(|s| s.to_string()).collect(),
        vec![report_values(report)],
    )
}

/// One row per grid point: `row`, the axis values, the report columns, then `error`.
pub fn sweep_csv(table: &SweepTable) -> String {
    let mut header = vec!["row".to_string()];
    header.extend(table.axes.iter().map(|a| a.name().to_string()));
    header.extend(REPORT_COLUMNS.iter().map(|s| s.to_string()));
    header.push("error".into());
    let rows = table
        .rows
        .iter()
        .map(|row| {
            let mut r = vec![row.index.to_string()];
            r.extend(row.params.iter().map(|v| v.to_string()));
            match &row.report {
                Some(rep) => r.extend(report_values(rep)),
                None => r.extend(std::iter::repeat_n(String::new(), REPORT_COLUMNS.len())),
            }
            r.push(row.error.clone().unwrap_or_default());
            r
        })
        .collect();
    csv_text(header, rows)
}

fn write(dir: &Path, name: &str, text: &str) -> Result<PathBuf, HarnessError> {
    fs::create_dir_all(dir).map_err(HarnessError::io(dir))?;
    let path = dir.join(name);
    fs::write(&path, text).map_err(HarnessError::io(&path))?;
    Ok(path)
}

pub fn write_report(
    report: &CycleReport,
    dir: &Path,
    format: Format,
) -> Result<PathBuf, HarnessError> {
    match format {
        Format::Json => write(dir, "report.json", &to_json(report)),
        Format::Csv => write(dir, "report.csv", &report_csv(report)),
    }
}

pub fn write_sweep(
    table: &SweepTable,
    dir: &Path,
    format: Format,
) -> Result<Vec<PathBuf>, HarnessError> {
    match format {
        Format::Json => Ok(vec![write(dir, "sweep.json", &to_json(table))?]),
        Format::Csv => Ok(vec![
            write(dir, "sweep.csv", &sweep_csv(table))?,
            write(dir, "argmax.json", &to_json(&table.argmax))?,
        ]),
    }
}
