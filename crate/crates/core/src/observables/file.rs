//! JSON unitary files: `{"d": 3, "matrix": [[[re, im], ...], ...]}`.

use serde::{Deserialize, Serialize};

use super::ObservablePair;
use crate::error::{Error, Result};
use crate::format::round_sig;
use crate::numerics::{CMatrix, C64};

/// Largest unitarity defect accepted from a file without `force`.
pub const FILE_UNITARY_TOL: f64 = 1e-8;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct UnitaryFile {
    d: usize,
    matrix: Vec<Vec<[f64; 2]>>,
}

/// Parses a unitary file. Matrices whose defect exceeds `1e-8` are
/// rejected unless `force` is set.
pub fn parse_unitary_json(text: &str, force: bool) -> Result<ObservablePair> {
    let file: UnitaryFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    if file.matrix.len() != file.d {
        return Err(Error::DimensionMismatch {
            expected: file.d,
            got: file.matrix.len(),
        });
    }
    let rows = file
        .matrix
        .iter()
        .map(|row| {
            if row.len() != file.d {
                return Err(Error::DimensionMismatch {
                    expected: file.d,
                    got: row.len(),
                });
            }
            Ok(row.iter().map(|&[re, im]| C64::new(re, im)).collect())
        })
        .collect::<Result<Vec<Vec<C64>>>>()?;
    let matrix = CMatrix::from_rows(&rows)?;
    let tol = if force { f64::INFINITY } else { FILE_UNITARY_TOL };
    ObservablePair::with_tolerance("file", matrix, tol)
}

/// Serializes `w` in the unitary file format, 12 significant digits.
pub fn unitary_json(w: &ObservablePair) -> String {
    let m = w.matrix();
    let file = UnitaryFile {
        d: m.dim(),
        matrix: m
            .rows()
            .map(|row| row.iter().map(|z| [round_sig(z.re), round_sig(z.im)]).collect())
            .collect(),
    };
    serde_json::to_string_pretty(&file).expect("plain data serializes")
}
