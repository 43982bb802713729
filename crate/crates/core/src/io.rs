//! Locale-free number formatting and atomic file output.
//!
//! Every float written by this crate goes through [`fmt_f64`]: scientific
//! notation with 17 significant digits and a `.` separator, so identical runs
//! produce byte-identical files.

use std::fs;
use std::io::Write;
use std::path::Path;

use serde::ser::{Error as _, Serialize, Serializer};
use serde_json::value::RawValue;

/// Formats `x` with 17 significant digits, e.g. `-4.4721359549995796e0`.
/// Non-finite values become `nan`, `inf` or `-inf`.
pub fn fmt_f64(x: f64) -> String {
    if x.is_nan() {
        "nan".to_owned()
    } else if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.to_owned()
    } else {
        format!("{x:.16e}")
    }
}

/// An `f64` that serializes to JSON in [`fmt_f64`] form (non-finite → `null`).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Sci(pub f64);

impl Serialize for Sci {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if !self.0.is_finite() {
            return s.serialize_none();
        }
        RawValue::from_string(fmt_f64(self.0))
            .map_err(S::Error::custom)?
            .serialize(s)
    }
}

/// `Some(x)` as [`Sci`], `None` as `null`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SciOpt(pub Option<f64>);

impl Serialize for SciOpt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0 {
            Some(x) => Sci(x).serialize(s),
            None => s.serialize_none(),
        }
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_json_string<T: Serialize + ?Sized>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("in-memory JSON serialization");
    text.push('\n');
    text
}

/// Writes `contents` to a temporary file next to `path` and renames it into
/// place.
pub fn write_atomic(path: &Path, contents: &[u8]) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    fs::create_dir_all(dir)?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

/// A CSV table with a fixed header, rendered with [`fmt_f64`]. Missing values
/// are written as empty fields.
#[derive(Clone, Debug, Default)]
pub struct CsvTable {
    header: Vec<String>,
    columns: Vec<Vec<Option<f64>>>,
}

impl CsvTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push_column(&mut self, name: &str, values: impl IntoIterator<Item = f64>) {
        self.push_optional_column(name, values.into_iter().map(Some));
    }

    pub fn push_optional_column(&mut self, name: &str, values: impl IntoIterator<Item = Option<f64>>) {
        let values: Vec<_> = values.into_iter().collect();
        if let Some(first) = self.columns.first() {
            assert_eq!(first.len(), values.len(), "column '{name}' has the wrong length");
        }
        self.header.push(name.to_owned());
        self.columns.push(values);
    }

    pub fn header(&self) -> &[String] {
        &self.header
    }

    pub fn render(&self) -> String {
        let rows = self.columns.first().map_or(0, Vec::len);
        let mut out = self.header.join(",");
        out.push('\n');
        for r in 0..rows {
            let line: Vec<String> = self
                .columns
                .iter()
                .map(|c| c[r].map(fmt_f64).unwrap_or_default())
                .collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }
}
