//! Matrix file I/O.
//!
//! Matrices travel as JSON objects `{"dim": n, "rows": [[[re, im], ...]]}`
//! with one `[re, im]` pair per entry, rows outermost. The writer emits 17
//! significant digits so that a write/read round trip reproduces every `f64`
//! bit for bit; the reader reports malformed input with line and column.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectral::CMatrix;

#[derive(Serialize, Deserialize)]
struct MatrixFile {
    dim: usize,
    rows: Vec<Vec<[f64; 2]>>,
}

/// Parse a matrix from its JSON text form.
pub fn parse_matrix(text: &str) -> Result<CMatrix> {
    let file: MatrixFile = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    if file.dim == 0 {
        return Err(Error::Parse {
            line: 0,
            column: 0,
            message: "dim must be at least 1".into(),
        });
    }
    if file.rows.len() != file.dim {
        return Err(Error::Parse {
            line: 0,
            column: 0,
            message: format!("expected {} rows, found {}", file.dim, file.rows.len()),
        });
    }
    for (i, row) in file.rows.iter().enumerate() {
        if row.len() != file.dim {
            return Err(Error::Parse {
                line: 0,
                column: 0,
                message: format!("row {} has {} entries, expected {}", i, row.len(), file.dim),
            });
        }
        for (j, entry) in row.iter().enumerate() {
            if !entry[0].is_finite() || !entry[1].is_finite() {
                return Err(Error::Parse {
                    line: 0,
                    column: 0,
                    message: format!("entry ({i}, {j}) is not finite"),
                });
            }
        }
    }
    Ok(CMatrix::from_fn(file.dim, file.dim, |i, j| {
        Complex64::new(file.rows[i][j][0], file.rows[i][j][1])
    }))
}

/// Render a matrix to its JSON text form at full `f64` precision.
pub fn render_matrix(m: &CMatrix) -> String {
    let dim = m.nrows();
    let mut out = String::new();
    let _ = write!(out, "{{\n  \"dim\": {dim},\n  \"rows\": [");
    for i in 0..dim {
        out.push_str("\n    [");
        for j in 0..dim {
            let z = m[(i, j)];
            let _ = write!(out, "[{:.16e}, {:.16e}]", z.re, z.im);
            if j + 1 < dim {
                out.push_str(", ");
            }
        }
        out.push(']');
        if i + 1 < dim {
            out.push(',');
        }
    }
    out.push_str("\n  ]\n}\n");
    out
}

/// Read a matrix from a JSON file.
pub fn read_matrix(path: &Path) -> Result<CMatrix> {
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_matrix(&text)
}

/// Write a matrix to a JSON file at full precision.
pub fn write_matrix(path: &Path, m: &CMatrix) -> Result<()> {
    fs::write(path, render_matrix(m)).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_bit_exact() {
        let m = CMatrix::from_fn(3, 3, |i, j| {
            Complex64::new(
                (i as f64 + 1.0) / (j as f64 + 3.0),
                ((i * 3 + j) as f64).sin() * 1e-7,
            )
        });
        let text = render_matrix(&m);
        let back = parse_matrix(&text).unwrap();
        assert_eq!(m, back);
    }

    #[test]
    fn parse_reports_position_on_bad_json() {
        let err = parse_matrix("{\"dim\": 2,\n  \"rows\": [[[1, 0], oops]]}").unwrap_err();
        match err {
            Error::Parse { line, column, .. } => {
                assert_eq!(line, 2);
                assert!(column > 0);
            }
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn parse_rejects_shape_mismatch() {
        let text = "{\"dim\": 2, \"rows\": [[[1, 0], [0, 0]]]}";
        let err = parse_matrix(text).unwrap_err();
        assert!(matches!(err, Error::Parse { .. }));
        assert!(err.to_string().contains("rows"));
    }

    #[test]
    fn parse_rejects_non_finite_entries() {
        let text = "{\"dim\": 1, \"rows\": [[[1e999, 0]]]}";
        let err = parse_matrix(text).unwrap_err();
        assert!(matches!(err, Error::Parse { .. }));
    }

    #[test]
    fn read_missing_file_is_io_error() {
        let err = read_matrix(Path::new("/nonexistent/m.json")).unwrap_err();
        assert!(matches!(err, Error::Io { .. }));
    }

    #[test]
    fn file_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("m.json");
        let m = CMatrix::from_fn(2, 2, |i, j| Complex64::new(0.1 * (i + j) as f64, -0.3));
        write_matrix(&path, &m).unwrap();
        let back = read_matrix(&path).unwrap();
        assert_eq!(m, back);
    }
}
