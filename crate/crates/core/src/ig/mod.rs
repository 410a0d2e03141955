//! The presentation of the maximal subgroup at `rho_{11}`: generators
//! `f_ij` per band position, unit relations for row and column 1, and one
//! relation `f_ij^-1 f_il = f_kj^-1 f_kl` per singular square.

mod identify;
mod squares;

use serde::{Deserialize, Serialize};

pub use identify::{
    check_identification_matches_matrix, derive_identifications, replay_merges, residue,
    reverse_partition, Identification, MatrixCheck, Merge, Residue, ResidueRelation, Rule,
};
pub use squares::{
    classify, replay_witnesses, singular_squares, singularizes, Shape, SingularSquare, SquareKind,
};

use crate::error::Result;
use crate::presentation::{GroupPresentation, Letter, Relation, Word};
use crate::semigroup::FiniteSemigroup;

/// 1-based band position `(i, j)`.
pub type Pos = (u32, u32);

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HPresentation {
    pub rows: usize,
    pub cols: usize,
    pub squares: Vec<SingularSquare>,
    pub identification: Option<Identification>,
}

pub fn generator_name(i: u32, j: u32) -> String {
    format!("f_{i}_{j}")
}

impl HPresentation {
    pub fn new(rows: usize, cols: usize, squares: Vec<SingularSquare>) -> Self {
        Self {
            rows,
            cols,
            squares,
            identification: None,
        }
    }

    /// 0-based generator id of `f_ij` (row-major).
    pub fn gen(&self, i: u32, j: u32) -> usize {
        (i as usize - 1) * self.cols + (j as usize - 1)
    }

    pub fn position(&self, gen: usize) -> Pos {
        ((gen / self.cols) as u32 + 1, (gen % self.cols) as u32 + 1)
    }

    pub fn generator_names(&self) -> Vec<String> {
        (0..self.rows * self.cols)
            .map(|g| {
                let (i, j) = self.position(g);
                generator_name(i, j)
            })
            .collect()
    }

    /// `f_1j = 1` for every column, then `f_i1 = 1` for rows `2..`.
    pub fn unit_relations(&self) -> Vec<Relation> {
        let unit = |i, j| Relation::relator(Word::gen(self.gen(i, j)));
        (1..=self.cols as u32)
            .map(|j| unit(1, j))
            .chain((2..=self.rows as u32).map(|i| unit(i, 1)))
            .collect()
    }

    pub fn square_relation(&self, sq: &SingularSquare) -> Relation {
        let [ij, il, kj, kl] = sq.corners().map(|(r, c)| self.gen(r, c));
        Relation::new(
            Word(vec![Letter::neg(ij), Letter::pos(il)]),
            Word(vec![Letter::neg(kj), Letter::pos(kl)]),
        )
    }

    pub fn relations(&self) -> Vec<Relation> {
        let mut out = self.unit_relations();
        out.extend(self.squares.iter().map(|sq| self.square_relation(sq)));
        out
    }

    pub fn to_group_presentation(&self) -> GroupPresentation {
        GroupPresentation {
            generators: self.generator_names(),
            relations: self.relations(),
        }
    }

    /// Shapes recomputed against the identified unit class, if any.
    pub fn shapes(&self) -> Vec<Shape> {
        self.squares
            .iter()
            .map(|sq| match &self.identification {
                Some(id) => classify(sq.i, sq.k, sq.j, sq.l, |r, c| id.is_unit(r, c)),
                None => sq.shape,
            })
            .collect()
    }
}

pub fn h1_presentation(s: &FiniteSemigroup) -> Result<HPresentation> {
    let squares = singular_squares(s)?;
    let a = s.ambient();
    Ok(HPresentation::new(a.rows, a.cols, squares))
}
