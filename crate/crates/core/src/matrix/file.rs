//! Matrix description files:
//!
//! ```json
//! {"elements": ["0", "1"], "designated": ["1"],
//!  "ops": {"inc": [[["0","1"], ["0","1"]], [["0","1"], ["0"]]], "neg": [["1"], ["0","1"]]}}
//! ```
//!
//! Binary tables are lists of rows indexed by the first argument; a cell
//! is a nonempty list of element names, or a bare name for a singleton.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::formula::Connective;

use super::{names, singleton, subset, Algebra, Cell, Matrix, MatrixError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FileError {
    #[error("invalid matrix file: {0}")]
    Json(String),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixDocument {
    pub elements: Vec<String>,
    pub designated: Vec<String>,
    pub ops: BTreeMap<String, Value>,
}

fn cell(a: &[String], v: &Value) -> Result<Cell, FileError> {
    let bad = || FileError::Json(format!("bad cell {v}"));
    let one = |v: &Value| -> Result<Cell, FileError> {
        let name = v.as_str().ok_or_else(bad)?;
        a.iter()
            .position(|e| e == name)
            .map(singleton)
            .ok_or_else(|| FileError::Json(format!("unknown element `{name}`")))
    };
    match v {
        Value::String(_) => one(v),
        Value::Array(items) if !items.is_empty() => items.iter().try_fold(0, |acc, x| Ok(acc | one(x)?)),
        _ => Err(bad()),
    }
}

impl MatrixDocument {
    pub fn parse(text: &str) -> Result<MatrixDocument, FileError> {
        serde_json::from_str(text).map_err(|e| FileError::Json(e.to_string()))
    }

    pub fn to_matrix(&self) -> Result<Matrix, FileError> {
        let n = self.elements.len();
        let mut ops = BTreeMap::new();
        for (key, table) in &self.ops {
            let c = Connective::from_key(key).ok_or_else(|| FileError::Json(format!("unknown operation `{key}`")))?;
            let rows = table
                .as_array()
                .ok_or_else(|| FileError::Json(format!("`{key}` must be a list")))?;
            let cells: Vec<Cell> = if c.arity() == 1 {
                rows.iter().map(|v| cell(&self.elements, v)).collect::<Result<_, _>>()?
            } else {
                let mut out = Vec::with_capacity(n * n);
                for row in rows {
                    let row = row
                        .as_array()
                        .ok_or_else(|| FileError::Json(format!("`{key}` rows must be lists")))?;
                    if row.len() != n {
                        return Err(FileError::Json(format!("`{key}` rows need {n} cells")));
                    }
                    for v in row {
                        out.push(cell(&self.elements, v)?);
                    }
                }
                out
            };
            ops.insert(c, cells);
        }
        let algebra = Algebra::new(self.elements.clone(), ops)?;
        let d: Vec<&str> = self.designated.iter().map(|s| s.as_str()).collect();
        let designated = subset(&algebra, &d)?;
        Ok(Matrix::new(algebra, designated)?)
    }

    pub fn from_matrix(m: &Matrix) -> MatrixDocument {
        let a = &m.algebra;
        let n = a.len();
        let render = |c: Cell| -> Value {
            let ns = names(a, c);
            if ns.len() == 1 {
                Value::String(ns[0].to_string())
            } else {
                Value::Array(ns.into_iter().map(|s| Value::String(s.to_string())).collect())
            }
        };
        let ops = a
            .ops
            .iter()
            .map(|(c, t)| {
                let v = if c.arity() == 1 {
                    Value::Array(t.iter().map(|&x| render(x)).collect())
                } else {
                    Value::Array(
                        t.chunks(n)
                            .map(|row| Value::Array(row.iter().map(|&x| render(x)).collect()))
                            .collect(),
                    )
                };
                (c.key().to_string(), v)
            })
            .collect();
        MatrixDocument {
            elements: a.elements.clone(),
            designated: names(a, m.designated).into_iter().map(String::from).collect(),
            ops,
        }
    }
}
