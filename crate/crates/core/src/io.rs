//! Reading and writing matrices as `{"dim": n, "entries": [[...], ...]}`.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::SymMatrix;

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixFile {
    dim: usize,
    entries: Vec<Vec<f64>>,
}

/// A matrix read from text, with the largest `|aᵢⱼ − aⱼᵢ|` removed by
/// symmetrization.
#[derive(Debug, Clone, PartialEq)]
pub struct LoadedMatrix {
    pub matrix: SymMatrix,
    pub asymmetry: f64,
}

/// Parses the matrix text format, symmetrizing by averaging with the transpose.
pub fn parse_matrix(text: &str) -> Result<LoadedMatrix> {
    let file: MatrixFile = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
    if file.entries.len() != file.dim {
        return Err(Error::Format(format!("dim is {} but there are {} rows", file.dim, file.entries.len())));
    }
    let mut data = Vec::with_capacity(file.dim * file.dim);
    for (i, row) in file.entries.iter().enumerate() {
        if row.len() != file.dim {
            return Err(Error::Format(format!("row {i} has {} entries, expected {}", row.len(), file.dim)));
        }
        data.extend_from_slice(row);
    }
    let (matrix, asymmetry) =
        SymMatrix::new_with_asymmetry(file.dim, data).map_err(|e| Error::Format(e.to_string()))?;
    Ok(LoadedMatrix { matrix, asymmetry })
}

pub fn read_matrix(path: &Path) -> Result<LoadedMatrix> {
    let text = fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_matrix(&text).map_err(|e| match e {
        Error::Format(msg) => Error::Format(format!("{}: {msg}", path.display())),
        other => other,
    })
}

pub fn format_matrix(m: &SymMatrix) -> String {
    let file = MatrixFile { dim: m.dim(), entries: m.rows() };
    serde_json::to_string_pretty(&file).expect("finite entries serialize")
}

pub fn write_matrix(path: &Path, m: &SymMatrix) -> Result<()> {
    fs::write(path, format_matrix(m) + "\n").map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let m = SymMatrix::from_rows(&[vec![1.0, 0.25], vec![0.25, -3.5]]).unwrap();
        let back = parse_matrix(&format_matrix(&m)).unwrap();
        assert_eq!(back.matrix, m);
        assert_eq!(back.asymmetry, 0.0);
    }

    #[test]
    fn symmetrizes_and_reports_asymmetry() {
        let got = parse_matrix(r#"{"dim": 2, "entries": [[1, 2], [0, 1]]}"#).unwrap();
        assert_eq!(got.matrix.get(0, 1), 1.0);
        assert_eq!(got.asymmetry, 2.0);
    }

    #[test]
    fn rejects_malformed() {
        for bad in [
            "not json",
            r#"{"dim": 2, "entries": [[1, 0]]}"#,
            r#"{"dim": 2, "entries": [[1, 0], [0]]}"#,
            r#"{"dim": 0, "entries": []}"#,
            r#"{"dim": 1, "entries": [[1]], "extra": 3}"#,
        ] {
            assert!(matches!(parse_matrix(bad), Err(Error::Format(_))), "{bad}");
        }
    }
}
