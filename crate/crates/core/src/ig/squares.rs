//! Singular squares of a semigroup containing its ambient rectangular band.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::semigroup::FiniteSemigroup;
use crate::transform::BElement;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SquareKind {
    /// Left-right: the witness fixes rows `i, k` and sends columns `j, l` to `j`.
    Lr,
    /// Up-down: the witness sends rows `i, k` to `i` and fixes columns `j, l`.
    Ud,
}

impl fmt::Display for SquareKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SquareKind::Lr => "LR",
            SquareKind::Ud => "UD",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Shape {
    Corner,
    FlushTop,
    FlushLeft,
    ThreeQuarter,
    General,
}

/// A singular square `(i,k; j,l)` with 1-based rows and columns.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SingularSquare {
    pub i: u32,
    pub k: u32,
    pub j: u32,
    pub l: u32,
    pub kind: SquareKind,
    /// Element index (closure order, 0-based) of the lowest singularizing idempotent.
    pub witness: usize,
    pub shape: Shape,
}

impl SingularSquare {
    pub fn key(&self) -> (u32, u32, u32, u32, SquareKind) {
        (self.i, self.k, self.j, self.l, self.kind)
    }

    /// Corner positions in the order `(i,j), (i,l), (k,j), (k,l)`.
    pub fn corners(&self) -> [(u32, u32); 4] {
        [
            (self.i, self.j),
            (self.i, self.l),
            (self.k, self.j),
            (self.k, self.l),
        ]
    }
}

impl fmt::Display for SingularSquare {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({},{};{},{}) {}",
            self.i, self.k, self.j, self.l, self.kind
        )
    }
}

/// Whether `beta` singularizes `(i,k; j,l)` in the given way.
pub fn singularizes(beta: &BElement, kind: SquareKind, i: u32, k: u32, j: u32, l: u32) -> bool {
    if !beta.is_idempotent() {
        return false;
    }
    let (left, right) = (&beta.left, &beta.right);
    match kind {
        SquareKind::Lr => {
            left.apply(i) == i && left.apply(k) == k && right.apply(j) == j && right.apply(l) == j
        }
        SquareKind::Ud => {
            left.apply(i) == i && left.apply(k) == i && right.apply(j) == j && right.apply(l) == l
        }
    }
}

pub fn classify(i: u32, k: u32, j: u32, l: u32, known_unit: impl Fn(u32, u32) -> bool) -> Shape {
    let top = i == 1 || k == 1;
    let left = j == 1 || l == 1;
    match (top, left) {
        (true, true) => Shape::Corner,
        (true, false) => Shape::FlushTop,
        (false, true) => Shape::FlushLeft,
        _ if [(i, j), (i, l), (k, j), (k, l)]
            .iter()
            .any(|&(r, c)| known_unit(r, c)) =>
        {
            Shape::ThreeQuarter
        }
        _ => Shape::General,
    }
}

/// All non-degenerate singular squares, sorted by `(i, k, j, l, kind)`.
pub fn singular_squares(s: &FiniteSemigroup) -> Result<Vec<SingularSquare>> {
    if !s.contains_rect_band() {
        let a = s.ambient();
        return Err(Error::PreconditionViolation(format!(
            "semigroup does not contain the rectangular band R_{{{},{}}}",
            a.rows, a.cols
        )));
    }
    let mut found: BTreeMap<(u32, u32, u32, u32, SquareKind), usize> = BTreeMap::new();
    for (idx, beta) in s.elements().iter().enumerate() {
        if !beta.is_idempotent() || beta.rect_band_coords().is_some() {
            continue;
        }
        let (left, right) = (&beta.left, &beta.right);
        let left_fixed: Vec<u32> = left.fixed_points().collect();
        let right_fixed: Vec<u32> = right.fixed_points().collect();

        // LR: rows i, k fixed; l != j with l -> j, j fixed
        for &i in &left_fixed {
            for &k in left_fixed.iter().filter(|&&k| k != i) {
                for &j in &right_fixed {
                    for l in right.preimage(j).filter(|&l| l != j) {
                        found.entry((i, k, j, l, SquareKind::Lr)).or_insert(idx);
                    }
                }
            }
        }
        // UD: i fixed, k != i with k -> i; columns j, l fixed
        for &i in &left_fixed {
            for k in left.preimage(i).filter(|&k| k != i) {
                for &j in &right_fixed {
                    for &l in right_fixed.iter().filter(|&&l| l != j) {
                        found.entry((i, k, j, l, SquareKind::Ud)).or_insert(idx);
                    }
                }
            }
        }
    }
    Ok(found
        .into_iter()
        .map(|((i, k, j, l, kind), witness)| SingularSquare {
            i,
            k,
            j,
            l,
            kind,
            witness,
            shape: classify(i, k, j, l, |r, c| r == 1 || c == 1),
        })
        .collect())
}

/// Re-checks each recorded witness against the defining conditions.
pub fn replay_witnesses(s: &FiniteSemigroup, squares: &[SingularSquare]) -> Result<(), String> {
    for sq in squares {
        let beta = s
            .elements()
            .get(sq.witness)
            .ok_or_else(|| format!("square {sq}: witness {} out of range", sq.witness))?;
        if sq.i == sq.k || sq.j == sq.l {
            return Err(format!("square {sq} is degenerate"));
        }
        if !singularizes(beta, sq.kind, sq.i, sq.k, sq.j, sq.l) {
            return Err(format!(
                "square {sq}: witness {} does not singularize it",
                sq.witness
            ));
        }
    }
    Ok(())
}
