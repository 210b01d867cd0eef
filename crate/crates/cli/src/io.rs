//! JSON encoding of matrices and numbers.

use std::fmt;
use std::str::FromStr;

use grassgeo::linalg::{c, CMatrix};
use serde::{Deserialize, Deserializer};
use serde_json::{json, Number, Value};

/// `{rows, cols, data: [[re, im], ...]}`, row-major.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixDocument {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<[f64; 2]>,
}

impl MatrixDocument {
    pub fn into_matrix(self) -> Result<CMatrix, String> {
        if self.rows == 0 || self.cols == 0 {
            return Err(format!("matrix must be nonempty, got {}x{}", self.rows, self.cols));
        }
        if self.data.len() != self.rows * self.cols {
            return Err(format!(
                "matrix data has {} entries, expected {} for {}x{}",
                self.data.len(),
                self.rows * self.cols,
                self.rows,
                self.cols
            ));
        }
        if self.data.iter().flatten().any(|x| !x.is_finite()) {
            return Err("matrix entries must be finite".into());
        }
        let entries: Vec<_> = self.data.iter().map(|[re, im]| c(*re, *im)).collect();
        Ok(CMatrix::from_row_slice(self.rows, self.cols, &entries))
    }
}

/// A matrix given inline as JSON or as `@path` to a JSON file.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixArg(pub CMatrix);

/// JSON parse failure with its position.
pub fn describe_json_error(source: &str, e: &serde_json::Error) -> String {
    format!("malformed JSON in {source} at line {}, column {}: {e}", e.line(), e.column())
}

impl FromStr for MatrixArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (source, text) = match s.strip_prefix('@') {
            Some(path) => {
                (path.to_string(), std::fs::read_to_string(path).map_err(|e| format!("cannot read {path}: {e}"))?)
            }
            None => ("matrix argument".to_string(), s.to_string()),
        };
        let doc: MatrixDocument = serde_json::from_str(&text).map_err(|e| describe_json_error(&source, &e))?;
        doc.into_matrix().map(MatrixArg)
    }
}

impl<'de> Deserialize<'de> for MatrixArg {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match Value::deserialize(d)? {
            Value::String(s) => s.parse().map_err(serde::de::Error::custom),
            other => serde_json::from_value::<MatrixDocument>(other)
                .map_err(serde::de::Error::custom)?
                .into_matrix()
                .map(MatrixArg)
                .map_err(serde::de::Error::custom),
        }
    }
}

impl fmt::Display for MatrixArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", matrix(&self.0))
    }
}

/// Float with 17 significant digits; non-finite values become `null`.
pub fn num(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    let text = format!("{x:.16e}");
    Value::Number(Number::from_str(&text).expect("formatted float is valid JSON"))
}

pub fn nums(xs: &[f64]) -> Value {
    Value::Array(xs.iter().map(|&x| num(x)).collect())
}

pub fn complex(z: num_complex::Complex64) -> Value {
    json!([num(z.re), num(z.im)])
}

pub fn matrix(m: &CMatrix) -> Value {
    let data: Vec<Value> = (0..m.nrows())
        .flat_map(|i| (0..m.ncols()).map(move |j| (i, j)))
        .map(|(i, j)| complex(m[(i, j)]))
        .collect();
    json!({ "rows": m.nrows(), "cols": m.ncols(), "data": data })
}
