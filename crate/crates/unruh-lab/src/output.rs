//! Artifact assembly: uniform number formatting, the embedded-config
//! convention, and the writers shared by several subcommands.
//!
//! CSV artifacts open with a single `#`-prefixed line holding the resolved
//! run configuration as compact JSON, then a header row, then data rows.
//! Floats are printed in shortest-roundtrip form, so artifacts are
//! byte-stable across runs and thread counts.  JSON artifacts are single
//! pretty-printed documents whose top-level `config` field plays the same
//! role.

use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;
use unruh_core::math::complex_norm;
use unruh_core::oscillatory::SpectrumRow;

use crate::config::RunConfig;
use crate::AppError;

/// Column order of every spectrum table.
pub const SPECTRUM_COLUMNS: [&str; 7] = [
    "omega",
    "abs_I_plus",
    "abs_I_minus",
    "re_I_plus",
    "im_I_plus",
    "re_I_minus",
    "im_I_minus",
];

/// The resolved config as one compact JSON line, for `#` headers.
pub fn config_line(config: &RunConfig) -> Result<String, AppError> {
    serde_json::to_string(config)
        .map_err(|e| AppError::Io(format!("serializing config: {e}")))
}

/// Pretty-printed JSON document with a trailing newline.
pub fn json_document<T: Serialize>(value: &T) -> Result<String, AppError> {
    serde_json::to_string_pretty(value)
        .map(|mut s| {
            s.push('\n');
            s
        })
        .map_err(|e| AppError::Io(format!("serializing artifact: {e}")))
}

/// Write an artifact file, mapping failures onto the I/O exit class.
pub fn write_artifact(path: &Path, content: &str) -> Result<(), AppError> {
    std::fs::write(path, content)
        .map_err(|e| AppError::Io(format!("writing {}: {e}", path.display())))
}

/// Shortest-roundtrip decimal form, the uniform CSV number format.
pub fn num(x: f64) -> String {
    format!("{x:?}")
}

/// Assemble the seven-column spectrum table used by `scan` and by the
/// transparency report.
pub fn spectrum_csv(config_line: &str, rows: &[SpectrumRow]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# {config_line}");
    let _ = writeln!(out, "{}", SPECTRUM_COLUMNS.join(","));
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            num(r.omega),
            num(complex_norm(r.i_plus)),
            num(complex_norm(r.i_minus)),
            num(r.i_plus.re),
            num(r.i_plus.im),
            num(r.i_minus.re),
            num(r.i_minus.im),
        );
    }
    out
}

/// Serializable mirror of one spectrum row for JSON artifacts.
#[derive(Debug, Serialize)]
pub struct SpectrumRowOut {
    pub omega: f64,
    pub abs_i_plus: f64,
    pub abs_i_minus: f64,
    pub re_i_plus: f64,
    pub im_i_plus: f64,
    pub re_i_minus: f64,
    pub im_i_minus: f64,
}

impl From<&SpectrumRow> for SpectrumRowOut {
    fn from(r: &SpectrumRow) -> Self {
        SpectrumRowOut {
            omega: r.omega,
            abs_i_plus: complex_norm(r.i_plus),
            abs_i_minus: complex_norm(r.i_minus),
            re_i_plus: r.i_plus.re,
            im_i_plus: r.i_plus.im,
            re_i_minus: r.i_minus.re,
            im_i_minus: r.i_minus.im,
        }
    }
}
