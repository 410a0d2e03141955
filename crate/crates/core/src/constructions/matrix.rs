use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

pub const UNIT: &str = "1";

/// Grid of group-element symbols indexed by band coordinates; `1` is the unit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<String>>", into = "Vec<Vec<String>>")]
pub struct AuxMatrix {
    entries: Vec<Vec<String>>,
}

impl AuxMatrix {
    /// Checks rectangularity and that row 1 and column 1 are all units.
    pub fn new(entries: Vec<Vec<String>>) -> Result<Self> {
        let cols = entries.first().map_or(0, Vec::len);
        if entries.is_empty() || cols == 0 {
            return Err(invalid("matrix must be nonempty"));
        }
        if let Some(r) = entries.iter().position(|r| r.len() != cols) {
            return Err(invalid(format!(
                "row {} has {} entries, expected {cols}",
                r + 1,
                entries[r].len()
            )));
        }
        for (i, row) in entries.iter().enumerate() {
            for (j, y) in row.iter().enumerate() {
                if (i == 0 || j == 0) && y != UNIT {
                    return Err(invalid(format!("entry ({},{}) must be 1", i + 1, j + 1)));
                }
            }
        }
        Ok(Self { entries })
    }

    pub fn rows(&self) -> usize {
        self.entries.len()
    }

    pub fn cols(&self) -> usize {
        self.entries[0].len()
    }

    /// Entry at 1-based `(i, j)`.
    pub fn get(&self, i: u32, j: u32) -> &str {
        &self.entries[i as usize - 1][j as usize - 1]
    }

    pub fn row(&self, i: u32) -> &[String] {
        &self.entries[i as usize - 1]
    }

    pub fn entries(&self) -> &[Vec<String>] {
        &self.entries
    }

    /// Distinct non-unit symbols in order of first appearance (row-major).
    pub fn symbols(&self) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        for y in self.entries.iter().flatten() {
            if y != UNIT && !out.contains(y) {
                out.push(y.clone());
            }
        }
        out
    }

    /// Positions grouped by symbol.
    pub fn classes(&self) -> BTreeMap<&str, Vec<(u32, u32)>> {
        let mut out: BTreeMap<&str, Vec<(u32, u32)>> = BTreeMap::new();
        for (i, row) in self.entries.iter().enumerate() {
            for (j, y) in row.iter().enumerate() {
                out.entry(y.as_str())
                    .or_default()
                    .push((i as u32 + 1, j as u32 + 1));
            }
        }
        out
    }
}

impl TryFrom<Vec<Vec<String>>> for AuxMatrix {
    type Error = crate::error::Error;

    fn try_from(v: Vec<Vec<String>>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<AuxMatrix> for Vec<Vec<String>> {
    fn from(m: AuxMatrix) -> Self {
        m.entries
    }
}

impl std::fmt::Display for AuxMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let width = self
            .entries
            .iter()
            .flatten()
            .map(String::len)
            .max()
            .unwrap_or(1);
        for row in &self.entries {
            let cells: Vec<String> = row.iter().map(|y| format!("{y:>width$}")).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}
