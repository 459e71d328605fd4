//! CSV and JSON emission. Files are written to a temporary sibling and
//! renamed into place; non-finite numbers abort the write.

use std::io::Write;
use std::path::Path;

use anyhow::Context;
use serde_json::Value;
use tempfile::NamedTempFile;

/// A number that was about to be written but is NaN or infinite.
#[derive(Debug)]
pub struct NonFinite(pub String);

impl std::fmt::Display for NonFinite {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "non-finite value in {}", self.0)
    }
}

impl std::error::Error for NonFinite {}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Cell {
    Int(u64),
    Real(f64),
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Real(v)
    }
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::Int(v)
    }
}

/// 17 significant digits, enough to round-trip any `f64`.
pub fn format_real(v: f64) -> String {
    format!("{v:.16e}")
}

fn write_atomic(path: &Path, bytes: &[u8]) -> anyhow::Result<()> {
    let dir = path
        .parent()
        .filter(|d| !d.as_os_str().is_empty())
        .unwrap_or(Path::new("."));
    std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let mut tmp = NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path)
        .with_context(|| format!("renaming into {}", path.display()))?;
    Ok(())
}

pub fn write_csv<I, R>(path: &Path, header: &[&str], rows: I) -> anyhow::Result<()>
where
    I: IntoIterator<Item = R>,
    R: AsRef<[Cell]>,
{
    let name = path
        .file_name()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(header)?;
    for (i, row) in rows.into_iter().enumerate() {
        let row = row.as_ref();
        anyhow::ensure!(
            row.len() == header.len(),
            "row {i} of {name} has {} cells",
            row.len()
        );
        let mut fields = Vec::with_capacity(row.len());
        for (cell, column) in row.iter().zip(header) {
            fields.push(match *cell {
                Cell::Int(v) => v.to_string(),
                Cell::Real(v) if v.is_finite() => format_real(v),
                Cell::Real(_) => return Err(NonFinite(format!("{name}, row {i}, column {column}")).into()),
            });
        }
        w.write_record(&fields)?;
    }
    let bytes = w.into_inner().map_err(|e| anyhow::anyhow!("{e}"))?;
    write_atomic(path, &bytes)
}

/// Fails on `null`, which is how `serde_json` renders NaN and infinities.
fn check_finite(v: &Value, at: &str) -> Result<(), NonFinite> {
    match v {
        Value::Null => Err(NonFinite(at.to_string())),
        Value::Array(items) => items
            .iter()
            .enumerate()
            .try_for_each(|(i, x)| check_finite(x, &format!("{at}[{i}]"))),
        Value::Object(map) => map
            .iter()
            .try_for_each(|(k, x)| check_finite(x, &format!("{at}.{k}"))),
        _ => Ok(()),
    }
}

pub fn write_json(path: &Path, value: &Value) -> anyhow::Result<()> {
    let name = path
        .file_name()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    check_finite(value, &name)?;
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    write_atomic(path, text.as_bytes())
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn seventeen_digits() {
        assert_eq!(format_real(0.1), "1.0000000000000001e-1");
        assert_eq!(format_real(-2.0), "-2.0000000000000000e0");
        for v in [0.1, 1.0 / 3.0, 6.02214076e23, -1e-300] {
            assert_eq!(format_real(v).parse::<f64>().unwrap(), v);
        }
    }

    #[test]
    fn csv_has_header_and_rejects_nan() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("a.csv");
        let rows = vec![vec![Cell::Int(0), Cell::Real(0.5)]];
        write_csv(&path, &["id", "v"], rows).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert_eq!(text, "id,v\n0,5.0000000000000000e-1\n");

        let rows = vec![vec![Cell::Int(0), Cell::Real(f64::NAN)]];
        let err = write_csv(&dir.path().join("b.csv"), &["id", "v"], rows).unwrap_err();
        assert!(err.downcast_ref::<NonFinite>().is_some());
        assert!(!dir.path().join("b.csv").exists());
    }

    #[test]
    fn json_rejects_nan() {
        let dir = tempfile::tempdir().unwrap();
        let err = write_json(&dir.path().join("s.json"), &json!({"x": f64::NAN})).unwrap_err();
        assert!(err.to_string().contains("s.json.x"));
        write_json(&dir.path().join("t.json"), &json!({"x": 1.5})).unwrap();
    }
}
