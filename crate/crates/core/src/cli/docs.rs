//! Versioned JSON documents read and written by the command-line tool.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::constructions::AuxMatrix;
use crate::error::{Error, Result};
use crate::ig::{Shape, SingularSquare, SquareKind};
use crate::presentation::{CayleyTable, GroupPresentation};
use crate::semigroup::FiniteSemigroup;
use crate::transform::{Ambient, BElement};

pub const VERSION: u32 = 1;

pub const REPORT: &str = "igmax-report";
pub const SEMIGROUP: &str = "igmax-semigroup";
pub const VERIFY_INPUT: &str = "igmax-verify-input";
pub const ERROR: &str = "igmax-error";

/// A table entry: a 1-based element index or an element name.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Index(usize),
    Name(String),
}

/// `{"elements": [...], "table": [[...], ...]}`, identity first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CayleyDoc {
    pub elements: Vec<String>,
    pub table: Vec<Vec<Entry>>,
}

impl CayleyDoc {
    pub fn from_table(t: &CayleyTable) -> Self {
        Self {
            elements: t.names().to_vec(),
            table: t
                .rows()
                .iter()
                .map(|row| row.iter().map(|&x| Entry::Index(x + 1)).collect())
                .collect(),
        }
    }

    pub fn to_table(&self) -> Result<CayleyTable> {
        let n = self.elements.len();
        let resolve =
            |e: &Entry| -> Result<usize> {
                match e {
                    Entry::Index(i) if (1..=n).contains(i) => Ok(i - 1),
                    Entry::Index(i) => Err(Error::Validation(format!(
                        "closure: entry {i} is not an element index in 1..={n}"
                    ))),
                    Entry::Name(s) => self.elements.iter().position(|x| x == s).ok_or_else(|| {
                        Error::Validation(format!("closure: {s} is not an element"))
                    }),
                }
            };
        let table = self
            .table
            .iter()
            .map(|row| row.iter().map(resolve).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        CayleyTable::new(self.elements.clone(), table)
    }
}

pub fn parse_cayley(text: &str) -> Result<CayleyTable> {
    let doc: CayleyDoc = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
    doc.to_table()
}

/// Checks the `format` and `version` fields before decoding the body.
pub fn decode<T: for<'de> Deserialize<'de>>(text: &str, format: &str) -> Result<T> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
    let found = v.get("format").and_then(Value::as_str);
    if found != Some(format) {
        return Err(Error::Format(format!(
            "expected format {format}, found {}",
            found.unwrap_or("no format field")
        )));
    }
    let version = v.get("version").and_then(Value::as_u64);
    if version != Some(VERSION as u64) {
        return Err(Error::Format(format!(
            "{format} version {} is not supported (expected {VERSION})",
            version.map_or("missing".to_string(), |x| x.to_string())
        )));
    }
    serde_json::from_value(v).map_err(|e| Error::Format(e.to_string()))
}

/// A closed semigroup: elements in closure order, generators and names
/// keyed by 1-based element index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SemigroupDoc {
    pub format: String,
    pub version: u32,
    pub rows: usize,
    pub cols: usize,
    pub generators: Vec<usize>,
    pub names: BTreeMap<usize, String>,
    pub elements: Vec<BElement>,
}

impl SemigroupDoc {
    pub fn new(s: &FiniteSemigroup, names: &BTreeMap<usize, String>) -> Self {
        let a = s.ambient();
        Self {
            format: SEMIGROUP.into(),
            version: VERSION,
            rows: a.rows,
            cols: a.cols,
            generators: s.generators().iter().map(|g| g + 1).collect(),
            names: names.iter().map(|(k, v)| (k + 1, v.clone())).collect(),
            elements: s.elements().to_vec(),
        }
    }

    pub fn load(&self) -> Result<(FiniteSemigroup, BTreeMap<usize, String>)> {
        if self.generators.contains(&0) {
            return Err(Error::Format("generator indices are 1-based".into()));
        }
        let s = FiniteSemigroup::from_parts(
            Ambient::new(self.rows, self.cols),
            self.elements.clone(),
            self.generators.iter().map(|g| g - 1).collect(),
        )?;
        let mut names = BTreeMap::new();
        for (&k, v) in &self.names {
            if k == 0 || k > s.len() {
                return Err(Error::Format(format!("name index {k} out of range")));
            }
            names.insert(k - 1, v.clone());
        }
        Ok((s, names))
    }
}

/// Name of an element: its given name, `rho_i_j` for band elements,
/// `element_k` (1-based) otherwise.
pub fn element_name(s: &FiniteSemigroup, names: &BTreeMap<usize, String>, x: usize) -> String {
    if let Some(n) = names.get(&x) {
        return n.clone();
    }
    match s.element(x).rect_band_coords() {
        Some((i, j)) => format!("rho_{i}_{j}"),
        None => format!("element_{}", x + 1),
    }
}

/// A singular square with a 1-based witness index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SquareDoc {
    pub i: u32,
    pub k: u32,
    pub j: u32,
    pub l: u32,
    pub kind: SquareKind,
    pub shape: Shape,
    pub witness: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness_name: Option<String>,
}

impl SquareDoc {
    pub fn new(sq: &SingularSquare, witness_name: Option<String>) -> Self {
        Self {
            i: sq.i,
            k: sq.k,
            j: sq.j,
            l: sq.l,
            kind: sq.kind,
            shape: sq.shape,
            witness: sq.witness + 1,
            witness_name,
        }
    }

    pub fn to_square(&self) -> Result<SingularSquare> {
        if self.witness == 0 {
            return Err(Error::Format("witness indices are 1-based".into()));
        }
        Ok(SingularSquare {
            i: self.i,
            k: self.k,
            j: self.j,
            l: self.l,
            kind: self.kind,
            witness: self.witness - 1,
            shape: self.shape,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub enum DefiningDoc {
    /// A presentation in the text grammar.
    Presentation(String),
    Cayley(CayleyDoc),
}

/// Everything the verification stage needs without the semigroup.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifyDoc {
    pub format: String,
    pub version: u32,
    pub matrix: AuxMatrix,
    pub squares: Vec<SquareDoc>,
    /// The residue presentation in the text grammar.
    pub residue: String,
    pub defining: DefiningDoc,
}

impl VerifyDoc {
    pub fn new(
        matrix: &AuxMatrix,
        squares: Vec<SquareDoc>,
        residue: &GroupPresentation,
        defining: DefiningDoc,
    ) -> Self {
        Self {
            format: VERIFY_INPUT.into(),
            version: VERSION,
            matrix: matrix.clone(),
            squares,
            residue: residue.to_string(),
            defining,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::{close, DEFAULT_CLOSURE_CAP};
    use crate::transform::rect_band;

    #[test]
    fn cayley_names_and_indices() {
        let by_name = r#"{"elements":["1","a"],"table":[["1","a"],["a","1"]]}"#;
        let by_index = r#"{"elements":["1","a"],"table":[[1,2],[2,1]]}"#;
        assert_eq!(
            parse_cayley(by_name).unwrap(),
            parse_cayley(by_index).unwrap()
        );
        let t = CayleyTable::cyclic(3);
        let round = serde_json::to_string(&CayleyDoc::from_table(&t)).unwrap();
        assert_eq!(parse_cayley(&round).unwrap(), t);
    }

    #[test]
    fn cayley_rejects_unknown_fields_and_bad_entries() {
        let extra = r#"{"elements":["1"],"table":[[1]],"order":1}"#;
        assert!(matches!(parse_cayley(extra), Err(Error::Format(_))));
        let zero = r#"{"elements":["1","a"],"table":[[1,2],[2,0]]}"#;
        assert!(matches!(parse_cayley(zero), Err(Error::Validation(_))));
    }

    #[test]
    fn header_is_checked() {
        let s = close(&rect_band(Ambient::new(2, 2)), DEFAULT_CLOSURE_CAP).unwrap();
        let doc = SemigroupDoc::new(&s, &BTreeMap::new());
        let text = serde_json::to_string(&doc).unwrap();
        let back: SemigroupDoc = decode(&text, SEMIGROUP).unwrap();
        assert_eq!(back, doc);
        assert!(matches!(
            decode::<SemigroupDoc>(&text, VERIFY_INPUT),
            Err(Error::Format(_))
        ));
        let bumped = text.replace("\"version\":1", "\"version\":2");
        let err = decode::<SemigroupDoc>(&bumped, SEMIGROUP).unwrap_err();
        assert!(err.to_string().contains("version 2"));
    }
}
