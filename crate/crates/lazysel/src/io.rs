//! Point files: CSV (one point per row, optional header) or JSON (array of
//! arrays). The format is picked from the extension, or sniffed from the
//! first non-blank byte when the extension is neither.

use std::fs;
use std::io::Write;
use std::path::Path;

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn for_path(path: &Path) -> Option<Format> {
        match path.extension()?.to_str()?.to_ascii_lowercase().as_str() {
            "csv" | "txt" => Some(Format::Csv),
            "json" => Some(Format::Json),
            _ => None,
        }
    }
}

/// Parses rows of numbers. A first CSV row that does not parse is taken as
/// a header; anything unparsable after that is an error.
pub fn parse_points(text: &str, format: Format) -> std::result::Result<Vec<Vec<f64>>, String> {
    let rows = match format {
        Format::Json => serde_json::from_str::<Vec<Vec<f64>>>(text).map_err(|e| e.to_string())?,
        Format::Csv => {
            let mut reader = csv::ReaderBuilder::new()
                .has_headers(false)
                .trim(csv::Trim::All)
                .comment(Some(b'#'))
                .from_reader(text.as_bytes());
            let mut rows = Vec::new();
            for (line, record) in reader.records().enumerate() {
                let record = record.map_err(|e| e.to_string())?;
                let parsed: std::result::Result<Vec<f64>, _> =
                    record.iter().map(|f| f.parse::<f64>()).collect();
                match parsed {
                    Ok(row) => rows.push(row),
                    Err(_) if line == 0 => continue,
                    Err(e) => return Err(format!("row {}: {e}", line + 1)),
                }
            }
            rows
        }
    };
    if let Some(first) = rows.first() {
        let m = first.len();
        if let Some(bad) = rows.iter().position(|r| r.len() != m) {
            return Err(format!(
                "row {} has {} columns, expected {m}",
                bad + 1,
                rows[bad].len()
            ));
        }
    }
    Ok(rows)
}

pub fn read_points(path: &Path) -> Result<Vec<Vec<f64>>> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let format = Format::for_path(path).unwrap_or_else(|| {
        if text.trim_start().starts_with('[') {
            Format::Json
        } else {
            Format::Csv
        }
    });
    let rows = parse_points(&text, format).map_err(|e| CliError::io(path, e))?;
    if rows.is_empty() {
        return Err(CliError::io(path, "no points"));
    }
    Ok(rows)
}

/// Shortest text that round-trips for JSON, 17 significant digits for CSV.
pub fn render_points<R: AsRef<[f64]>>(rows: &[R], format: Format) -> String {
    match format {
        Format::Json => {
            let rows: Vec<&[f64]> = rows.iter().map(|r| r.as_ref()).collect();
            let mut s = serde_json::to_string(&rows).expect("finite floats serialize");
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut s = String::new();
            for row in rows {
                let fields: Vec<String> =
                    row.as_ref().iter().map(|x| format!("{x:.16e}")).collect();
                s.push_str(&fields.join(","));
                s.push('\n');
            }
            s
        }
    }
}

pub fn write_points<R: AsRef<[f64]>>(path: &Path, rows: &[R]) -> Result<()> {
    let format = Format::for_path(path).unwrap_or(Format::Csv);
    write_text(path, &render_points(rows, format))
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    }
    let mut f = fs::File::create(path).map_err(|e| CliError::io(path, e))?;
    f.write_all(text.as_bytes())
        .map_err(|e| CliError::io(path, e))
}

/// Negates every coordinate, turning maximization into minimization.
pub fn negate(rows: &mut [Vec<f64>]) {
    for x in rows.iter_mut().flatten() {
        *x = -*x;
    }
}

/// `(1.1, ..., 1.1)` when every coordinate is at most 1, otherwise each
/// dimension's maximum plus 10% of its range (plus 0.1 when the range is 0).
pub fn default_ref_point(rows: &[Vec<f64>]) -> Vec<f64> {
    let m = rows[0].len();
    if rows.iter().flatten().all(|&x| x <= 1.0) {
        return vec![1.1; m];
    }
    (0..m)
        .map(|j| {
            let (lo, hi) = rows
                .iter()
                .map(|r| r[j])
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), x| {
                    (lo.min(x), hi.max(x))
                });
            let range = hi - lo;
            if range > 0.0 {
                hi + 0.1 * range
            } else {
                hi + 0.1
            }
        })
        .collect()
}
