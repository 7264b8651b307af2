//! The JSON algebra file format.
//!
//! ```json
//! {
//!   "name": "C3",
//!   "elements": ["0", "a", "1"],
//!   "le": [[0, 1], [1, 2]],
//!   "involution": [2, 1, 0],
//!   "expect": { "star": [2, 0, 0], "arrow": [[2, 2, 2], [0, 2, 2], [0, 1, 2]] }
//! }
//! ```
//!
//! `le` pairs are closed reflexively and transitively. Derived tables are
//! never read from the file; an `expect` block is compared against them and a
//! mismatch is an error.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{AlgebraError, Elem, FiniteAlgebra, Op};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("{0}: {1}")]
    Io(String, String),
    #[error("{0}: {1}")]
    Format(String, String),
    #[error("{0}: {1}")]
    Invalid(String, AlgebraError),
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expect {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub star: Option<Vec<Elem>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub plus: Option<Vec<Elem>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub arrow: Option<Vec<Vec<Elem>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coarrow: Option<Vec<Vec<Elem>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub name: String,
    pub elements: Vec<String>,
    pub le: Vec<(usize, usize)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub involution: Option<Vec<Elem>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expect: Option<Expect>,
}

impl AlgebraFile {
    /// Validates and builds the algebra, checking any expected tables.
    pub fn build(&self) -> Result<FiniteAlgebra, AlgebraError> {
        let mut a = FiniteAlgebra::build_from_order(&self.name, &self.elements, &self.le)?;
        if let Some(inv) = &self.involution {
            a = a.with_involution(inv.clone())?;
        }
        if let Some(expect) = &self.expect {
            let mut probe = a.clone();
            let tables = [
                (Op::Star, expect.star.clone()),
                (Op::Plus, expect.plus.clone()),
                (Op::Arrow, expect.arrow.as_ref().map(|rows| rows.concat())),
                (Op::CoArrow, expect.coarrow.as_ref().map(|rows| rows.concat())),
            ];
            for (op, table) in tables {
                if let Some(t) = table {
                    probe = probe.with_table(op, t)?;
                }
            }
            probe.verify_derived()?;
        }
        Ok(a)
    }

    /// The file form of an algebra: covering pairs and the involution.
    pub fn from_algebra(a: &FiniteAlgebra) -> Self {
        AlgebraFile {
            name: a.name().to_string(),
            elements: a.labels().to_vec(),
            le: a.covers(),
            involution: a.table(Op::Prime).map(|t| t.to_vec()),
            expect: None,
        }
    }
}

pub fn parse_algebra(text: &str) -> Result<FiniteAlgebra, IoError> {
    let file: AlgebraFile =
        serde_json::from_str(text).map_err(|e| IoError::Format("algebra".into(), e.to_string()))?;
    file.build().map_err(|e| IoError::Invalid(file.name.clone(), e))
}

pub fn read_algebra(path: &Path) -> Result<FiniteAlgebra, IoError> {
    let shown = path.display().to_string();
    let text = fs::read_to_string(path).map_err(|e| IoError::Io(shown.clone(), e.to_string()))?;
    let file: AlgebraFile = serde_json::from_str(&text).map_err(|e| IoError::Format(shown.clone(), e.to_string()))?;
    file.build().map_err(|e| IoError::Invalid(shown, e))
}

pub fn algebra_to_json(a: &FiniteAlgebra) -> String {
    let mut s = serde_json::to_string_pretty(&AlgebraFile::from_algebra(a)).expect("plain data serializes");
    s.push('\n');
    s
}

pub fn write_algebra(path: &Path, a: &FiniteAlgebra) -> Result<(), IoError> {
    fs::write(path, algebra_to_json(a)).map_err(|e| IoError::Io(path.display().to_string(), e.to_string()))
}
