//! Matrix files: `{"dims": [d1, …, dk], "re": [[…]], "im": [[…]]}`, row-major,
//! finite doubles.

use num_complex::Complex64;
use serde::Serialize;
use serde_json::Value;

use crate::entropy::DensityMatrix;
use crate::error::{Error, Result};
use crate::hermitian::{ComplexMatrix, HilbertFactorization};

#[derive(Serialize)]
struct MatrixFile<'a> {
    dims: &'a [usize],
    re: Vec<Vec<f64>>,
    im: Vec<Vec<f64>>,
}

fn malformed(msg: impl Into<String>) -> Error {
    Error::MalformedMatrix(msg.into())
}

fn parse_block(value: Option<&Value>, key: &str, n: usize) -> Result<Vec<Vec<f64>>> {
    let rows = value
        .ok_or_else(|| malformed(format!("missing \"{key}\"")))?
        .as_array()
        .ok_or_else(|| malformed(format!("\"{key}\" must be an array of rows")))?;
    if rows.len() != n {
        return Err(malformed(format!(
            "\"{key}\" has {} rows, expected {n}",
            rows.len()
        )));
    }
    rows.iter()
        .enumerate()
        .map(|(i, row)| {
            let row = row
                .as_array()
                .ok_or_else(|| malformed(format!("{key} row {i} is not an array")))?;
            if row.len() != n {
                return Err(malformed(format!(
                    "{key} row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            row.iter()
                .enumerate()
                .map(|(j, x)| {
                    x.as_f64().filter(|v| v.is_finite()).ok_or_else(|| {
                        malformed(format!("{key}[{i}][{j}] is not a finite number: {x}"))
                    })
                })
                .collect()
        })
        .collect()
}

/// Parses a matrix file, reporting the first offending entry by row and
/// column.
pub fn parse_matrix(text: &str) -> Result<(ComplexMatrix<f64>, HilbertFactorization)> {
    let root: Value =
        serde_json::from_str(text).map_err(|e| malformed(format!("invalid JSON: {e}")))?;
    let obj = root
        .as_object()
        .ok_or_else(|| malformed("top level must be an object"))?;
    let dims = obj
        .get("dims")
        .and_then(Value::as_array)
        .ok_or_else(|| malformed("missing \"dims\" array"))?
        .iter()
        .enumerate()
        .map(|(k, d)| {
            d.as_u64()
                .filter(|&d| d > 0)
                .map(|d| d as usize)
                .ok_or_else(|| malformed(format!("dims[{k}] must be a positive integer: {d}")))
        })
        .collect::<Result<Vec<_>>>()?;
    let f = HilbertFactorization::new(dims).map_err(|e| malformed(e.to_string()))?;
    let n = f.total();
    let re = parse_block(obj.get("re"), "re", n)?;
    let im = parse_block(obj.get("im"), "im", n)?;
    let m = ComplexMatrix::from_fn(n, n, |i, j| Complex64::new(re[i][j], im[i][j]));
    Ok((m, f))
}

/// Parses a matrix file and validates it as a density matrix.
pub fn parse_density(text: &str) -> Result<DensityMatrix<f64>> {
    let (m, f) = parse_matrix(text)?;
    DensityMatrix::new(m, f)
}

pub fn read_density(path: &std::path::Path) -> Result<DensityMatrix<f64>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidParameter(format!("cannot read {}: {e}", path.display())))?;
    parse_density(&text)
}

/// Serializes a matrix in the file format.
pub fn matrix_to_json(m: &ComplexMatrix<f64>, f: &HilbertFactorization) -> Result<String> {
    if m.rows() != f.total() || m.cols() != f.total() {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} matrix for factorization {:?}",
            m.rows(),
            m.cols(),
            f.dims()
        )));
    }
    let block = |part: fn(&Complex64) -> f64| -> Vec<Vec<f64>> {
        (0..m.rows())
            .map(|i| (0..m.cols()).map(|j| part(&m[(i, j)])).collect())
            .collect()
    };
    let file = MatrixFile {
        dims: f.dims(),
        re: block(|z| z.re),
        im: block(|z| z.im),
    };
    Ok(serde_json::to_string(&file).expect("matrix serializes"))
}
