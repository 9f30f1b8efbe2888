//! Matrix, point and report files.
//!
//! Matrices are CSV (row-major, no header) or a JSON array of rows; the
//! extension `.json` selects JSON. Saving uses the shortest round-trip
//! decimal form of each entry, so load-then-save of a canonical file is
//! byte-identical.

use std::fs;
use std::path::Path;

use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::matrix::{validate_distance_matrix, validate_similarity_matrix, DEFAULT_EPS_PSD};
use crate::measures::{Input, Measure};
use crate::points::PointConfiguration;
use crate::value::MeasureValue;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatrixKind {
    Distance,
    Similarity,
}

/// Parse CSV text into rows. Every row must have as many entries as the
/// first one; blank lines are skipped.
pub fn parse_csv_matrix(text: &str) -> Result<Vec<Vec<f64>>> {
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let row = line
            .split(',')
            .map(|f| {
                let f = f.trim();
                f.parse::<f64>().map_err(|_| Error::parse(line_no, format!("`{f}` is not a number")))
            })
            .collect::<Result<Vec<f64>>>()?;
        if let Some(first) = rows.first() {
            if row.len() != first.len() {
                return Err(Error::parse(line_no, format!("row has {} entries, expected {}", row.len(), first.len())));
            }
        }
        rows.push(row);
    }
    Ok(rows)
}

pub fn parse_json_matrix(text: &str) -> Result<Vec<Vec<f64>>> {
    serde_json::from_str(text).map_err(|e| Error::parse(e.line(), e.to_string()))
}

/// Canonical CSV: entries joined by `,`, one row per line, trailing newline.
pub fn format_csv_matrix(rows: &[Vec<f64>]) -> String {
    let mut out = String::new();
    for row in rows {
        let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

fn is_json(path: &Path) -> bool {
    path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json"))
}

pub fn read_raw_matrix(path: &Path) -> Result<Vec<Vec<f64>>> {
    let text = fs::read_to_string(path)?;
    if is_json(path) {
        parse_json_matrix(&text)
    } else {
        parse_csv_matrix(&text)
    }
}

/// Load and validate a matrix with default tolerances (exact zeros for
/// distances, `1e-9` PSD slack for similarities).
pub fn load_matrix(path: &Path, kind: MatrixKind) -> Result<Input> {
    let raw = read_raw_matrix(path)?;
    Ok(match kind {
        MatrixKind::Distance => Input::Distance(validate_distance_matrix(raw, 0.0)?),
        MatrixKind::Similarity => Input::Similarity(validate_similarity_matrix(raw, DEFAULT_EPS_PSD)?),
    })
}

pub fn save_matrix(rows: &[Vec<f64>], path: &Path) -> Result<()> {
    if is_json(path) {
        write_json(rows, path)
    } else {
        Ok(fs::write(path, format_csv_matrix(rows))?)
    }
}

pub fn parse_points(text: &str) -> Result<PointConfiguration> {
    serde_json::from_str(text).map_err(|e| Error::parse(e.line(), e.to_string()))
}

pub fn load_points(path: &Path) -> Result<PointConfiguration> {
    parse_points(&fs::read_to_string(path)?)
}

pub fn save_points(cfg: &PointConfiguration, path: &Path) -> Result<()> {
    write_json(cfg, path)
}

/// One computed value: `{"measure", "params", "value"}`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub measure: String,
    pub params: Value,
    pub value: MeasureValue,
}

impl Report {
    pub fn new(measure: &Measure, value: MeasureValue) -> Self {
        Report { measure: measure.name().to_string(), params: measure.params_json(), value }
    }
}

pub fn save_report(report: &Report, path: &Path) -> Result<()> {
    write_json(report, path)
}

/// Pretty JSON with a trailing newline.
pub fn to_json_string<T: Serialize + ?Sized>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable values");
    s.push('\n');
    s
}

pub fn write_json<T: Serialize + ?Sized>(v: &T, path: &Path) -> Result<()> {
    Ok(fs::write(path, to_json_string(v))?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_parse() {
        assert_eq!(parse_csv_matrix("0,1\n1,0").unwrap(), vec![vec![0.0, 1.0], vec![1.0, 0.0]]);
        assert!(matches!(parse_csv_matrix("0,1\n1"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_csv_matrix("0,x\n"), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn canonical_round_trip() {
        let text = "0,0.5,1.25\n0.5,0,2\n1.25,2,0\n";
        assert_eq!(format_csv_matrix(&parse_csv_matrix(text).unwrap()), text);
    }

    #[test]
    fn files() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("d.csv");
        fs::write(&p, "0,1\n1,0\n").unwrap();
        let Input::Distance(d) = load_matrix(&p, MatrixKind::Distance).unwrap() else { panic!() };
        assert_eq!(d.n(), 2);

        let q = dir.path().join("pts.json");
        fs::write(&q, r#"{"space":"unit_segment","points":[[0],[1]]}"#).unwrap();
        assert_eq!(load_points(&q).unwrap().n(), 2);

        let r = dir.path().join("r.json");
        let rep = Report::new(&Measure::Average, MeasureValue::new(1.0));
        save_report(&rep, &r).unwrap();
        let back: Value = serde_json::from_str(&fs::read_to_string(&r).unwrap()).unwrap();
        assert_eq!(back["measure"], "average");
        assert_eq!(back["value"], 1.0);
    }
}
