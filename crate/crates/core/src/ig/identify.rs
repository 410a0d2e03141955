//! Identification closure over band positions and the residual relations
//! left once identified generators are merged.

use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};

use super::{generator_name, HPresentation, Pos, SingularSquare};
use crate::constructions::{AuxMatrix, UNIT};
use crate::error::{invalid, Result};
use crate::presentation::{GroupPresentation, Letter, Relation, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    /// `f_ij ~ f_kj` gives `f_il ~ f_kl`.
    Column,
    /// `f_ij ~ f_il` gives `f_kj ~ f_kl`.
    Row,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Merge {
    /// Index into the square list.
    pub square: usize,
    pub rule: Rule,
    pub premise: [Pos; 2],
    pub conclusion: [Pos; 2],
}

/// Partition of band positions plus a unit class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Identification {
    pub rows: usize,
    pub cols: usize,
    /// Positions identified with the unit, sorted.
    pub unit: Vec<Pos>,
    /// Remaining classes, each sorted, ordered by least position; the first
    /// position is the representative.
    pub classes: Vec<Vec<Pos>>,
    pub merges: Vec<Merge>,
}

impl Identification {
    fn class_index(&self) -> BTreeMap<Pos, usize> {
        let mut out = BTreeMap::new();
        for (c, members) in self.classes.iter().enumerate() {
            for &p in members {
                out.insert(p, c);
            }
        }
        out
    }

    pub fn is_unit(&self, i: u32, j: u32) -> bool {
        self.unit.binary_search(&(i, j)).is_ok()
    }

    /// Class of a position; `None` for the unit class.
    pub fn class_of(&self, i: u32, j: u32) -> Option<usize> {
        self.classes
            .iter()
            .position(|c| c.binary_search(&(i, j)).is_ok())
    }

    pub fn representatives(&self) -> Vec<Pos> {
        self.classes.iter().map(|c| c[0]).collect()
    }
}

struct Partition {
    cols: usize,
    parent: Vec<usize>,
}

impl Partition {
    fn new(rows: usize, cols: usize) -> Self {
        let mut p = Self {
            cols,
            parent: (0..=rows * cols).collect(),
        };
        for j in 1..=cols as u32 {
            p.union((1, j), None);
        }
        for i in 2..=rows as u32 {
            p.union((i, 1), None);
        }
        p
    }

    /// Node 0 is the unit; position `(i, j)` is node `1 + (i-1) cols + (j-1)`.
    fn node(&self, p: Pos) -> usize {
        1 + (p.0 as usize - 1) * self.cols + (p.1 as usize - 1)
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn same(&mut self, a: Pos, b: Pos) -> bool {
        let (a, b) = (self.node(a), self.node(b));
        self.find(a) == self.find(b)
    }

    /// Merges `a` with `b` (or with the unit when `b` is `None`); true if
    /// the classes were distinct.
    fn union(&mut self, a: Pos, b: Option<Pos>) -> bool {
        let ra = self.find(self.node(a));
        let rb = match b {
            Some(b) => self.find(self.node(b)),
            None => self.find(0),
        };
        if ra == rb {
            return false;
        }
        let (lo, hi) = (ra.min(rb), ra.max(rb));
        self.parent[hi] = lo;
        true
    }
}

fn rule_step(sq: &SingularSquare, rule: Rule) -> ([Pos; 2], [Pos; 2]) {
    let [ij, il, kj, kl] = sq.corners();
    match rule {
        Rule::Column => ([ij, kj], [il, kl]),
        Rule::Row => ([ij, il], [kj, kl]),
    }
}

fn closure(
    rows: usize,
    cols: usize,
    squares: &[SingularSquare],
    order: &[usize],
) -> (Partition, Vec<Merge>) {
    let mut part = Partition::new(rows, cols);
    let mut merges = Vec::new();
    loop {
        let mut changed = false;
        for &s in order {
            for rule in [Rule::Column, Rule::Row] {
                let (premise, conclusion) = rule_step(&squares[s], rule);
                if part.same(premise[0], premise[1])
                    && part.union(conclusion[0], Some(conclusion[1]))
                {
                    merges.push(Merge {
                        square: s,
                        rule,
                        premise,
                        conclusion,
                    });
                    changed = true;
                }
            }
        }
        if !changed {
            return (part, merges);
        }
    }
}

fn into_identification(
    rows: usize,
    cols: usize,
    mut part: Partition,
    merges: Vec<Merge>,
) -> Identification {
    let mut unit = Vec::new();
    let mut by_root: BTreeMap<usize, Vec<Pos>> = BTreeMap::new();
    let unit_root = part.find(0);
    for i in 1..=rows as u32 {
        for j in 1..=cols as u32 {
            let r = part.find(part.node((i, j)));
            if r == unit_root {
                unit.push((i, j));
            } else {
                by_root.entry(r).or_default().push((i, j));
            }
        }
    }
    let mut classes: Vec<Vec<Pos>> = by_root.into_values().collect();
    classes.sort_unstable_by_key(|c| c[0]);
    Identification {
        rows,
        cols,
        unit,
        classes,
        merges,
    }
}

/// Closes the unit seeding of row and column 1 under the column and row
/// rules of every square, to a fixpoint.
pub fn derive_identifications(h: &HPresentation) -> HPresentation {
    let order: Vec<usize> = (0..h.squares.len()).collect();
    let (part, merges) = closure(h.rows, h.cols, &h.squares, &order);
    let id = into_identification(h.rows, h.cols, part, merges);
    let mut out = h.clone();
    for (sq, shape) in out.squares.iter_mut().zip(
        h.squares
            .iter()
            .map(|sq| super::classify(sq.i, sq.k, sq.j, sq.l, |r, c| id.is_unit(r, c))),
    ) {
        sq.shape = shape;
    }
    out.identification = Some(id);
    out
}

/// The closure run with squares visited in reverse; its partition must
/// agree with the forward run.
pub fn reverse_partition(h: &HPresentation) -> (Vec<Pos>, Vec<Vec<Pos>>) {
    let order: Vec<usize> = (0..h.squares.len()).rev().collect();
    let (part, merges) = closure(h.rows, h.cols, &h.squares, &order);
    let id = into_identification(h.rows, h.cols, part, merges);
    (id.unit, id.classes)
}

/// Replays each recorded merge from the unit seeding, checking that its
/// premise already held and that it follows from its square's relation.
pub fn replay_merges(h: &HPresentation) -> Result<(), String> {
    let id = h
        .identification
        .as_ref()
        .ok_or("identification not derived")?;
    let mut part = Partition::new(h.rows, h.cols);
    for (n, m) in id.merges.iter().enumerate() {
        let sq = h
            .squares
            .get(m.square)
            .ok_or_else(|| format!("merge {n}: square {} out of range", m.square))?;
        let (premise, conclusion) = rule_step(sq, m.rule);
        if premise != m.premise || conclusion != m.conclusion {
            return Err(format!("merge {n}: positions do not match square {sq}"));
        }
        if !part.same(premise[0], premise[1]) {
            return Err(format!(
                "merge {n}: premise {premise:?} not yet established"
            ));
        }
        part.union(conclusion[0], Some(conclusion[1]));
    }
    let replayed = into_identification(h.rows, h.cols, part, Vec::new());
    if replayed.unit != id.unit || replayed.classes != id.classes {
        return Err("replayed partition differs from the recorded one".into());
    }
    Ok(())
}

/// Result of comparing the derived partition with the partition of
/// positions by matrix entry.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixCheck {
    /// The two partitions are equal.
    pub matches: bool,
    /// Every matrix class lies inside one derived class (positions with
    /// entry 1 in the unit class); the derived partition may be coarser.
    pub covers_matrix: bool,
    pub mismatches: Vec<String>,
}

pub fn check_identification_matches_matrix(
    h: &HPresentation,
    y: &AuxMatrix,
) -> Result<MatrixCheck> {
    let id = h
        .identification
        .as_ref()
        .ok_or_else(|| invalid("identification not derived"))?;
    if y.rows() != h.rows || y.cols() != h.cols {
        return Err(invalid(format!(
            "matrix is {}x{}, presentation grid is {}x{}",
            y.rows(),
            y.cols(),
            h.rows,
            h.cols
        )));
    }
    let index = id.class_index();
    let mut mismatches = Vec::new();
    let mut covers_matrix = true;
    let mut symbol_of_class: BTreeMap<usize, (&str, Pos)> = BTreeMap::new();
    let mut class_of_symbol: BTreeMap<&str, (usize, Pos)> = BTreeMap::new();
    for i in 1..=h.rows as u32 {
        for j in 1..=h.cols as u32 {
            let sym = y.get(i, j);
            match index.get(&(i, j)) {
                None if sym != UNIT => {
                    mismatches.push(format!("({i},{j}) is identified with 1 but y = {sym}"))
                }
                None => {}
                Some(_) if sym == UNIT => {
                    covers_matrix = false;
                    mismatches.push(format!("({i},{j}) has y = 1 but is not identified with 1"))
                }
                Some(&c) => {
                    let (s0, p0) = *symbol_of_class.entry(c).or_insert((sym, (i, j)));
                    if s0 != sym {
                        mismatches.push(format!(
                            "({},{}) and ({i},{j}) are identified but y = {s0} vs {sym}",
                            p0.0, p0.1
                        ));
                    }
                    let (c0, q0) = *class_of_symbol.entry(sym).or_insert((c, (i, j)));
                    if c0 != c {
                        covers_matrix = false;
                        mismatches.push(format!(
                            "({},{}) and ({i},{j}) share y = {sym} but are not identified",
                            q0.0, q0.1
                        ));
                    }
                }
            }
        }
    }
    Ok(MatrixCheck {
        matches: mismatches.is_empty(),
        covers_matrix,
        mismatches,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidueRelation {
    /// Index of the square the relation came from.
    pub square: usize,
    /// Over class indices of the identification.
    pub relation: Relation,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Residue {
    /// Class representatives, one generator each.
    pub generators: Vec<Pos>,
    pub relations: Vec<ResidueRelation>,
}

impl Residue {
    /// Generator names: the matrix symbol at each representative when these
    /// are distinct non-unit symbols, `f_i_j` otherwise.
    pub fn names(&self, y: Option<&AuxMatrix>) -> Vec<String> {
        let fallback = || -> Vec<String> {
            self.generators
                .iter()
                .map(|&(i, j)| generator_name(i, j))
                .collect()
        };
        let Some(y) = y else { return fallback() };
        if y.rows() == 0
            || self
                .generators
                .iter()
                .any(|&(i, j)| i as usize > y.rows() || j as usize > y.cols())
        {
            return fallback();
        }
        let names: Vec<String> = self
            .generators
            .iter()
            .map(|&(i, j)| y.get(i, j).to_string())
            .collect();
        let distinct: HashSet<&String> = names.iter().collect();
        if distinct.len() != names.len() || names.iter().any(|n| n == UNIT) {
            return fallback();
        }
        names
    }

    pub fn presentation(&self, y: Option<&AuxMatrix>) -> GroupPresentation {
        GroupPresentation {
            generators: self.names(y),
            relations: self.relations.iter().map(|r| r.relation.clone()).collect(),
        }
    }
}

/// Square relations rewritten over class representatives. With
/// `X = f_ij, Y = f_il, Z = f_kj, W = f_kl` the relation reads `Z X^-1 Y = W`;
/// when one corner is the unit it is put in product form (`Z Y = W`,
/// `X W = Y`, `W X = Z` or `Y Z = X`). Trivial relations are dropped and
/// duplicates kept once, in square order.
pub fn residue(h: &HPresentation) -> Result<Residue> {
    let id = h
        .identification
        .as_ref()
        .ok_or_else(|| invalid("identification not derived"))?;
    let index = id.class_index();
    let word = |p: Pos| -> Word {
        match index.get(&p) {
            Some(&c) => Word::gen(c),
            None => Word::empty(),
        }
    };
    let mut seen = HashSet::new();
    let mut relations = Vec::new();
    for (s, sq) in h.squares.iter().enumerate() {
        let [x, y, z, w] = sq.corners().map(word);
        let rel = if x.is_empty() {
            Relation::new(z.concat(&y), w)
        } else if z.is_empty() {
            Relation::new(x.concat(&w), y)
        } else if y.is_empty() {
            Relation::new(w.concat(&x), z)
        } else if w.is_empty() {
            Relation::new(y.concat(&z), x)
        } else {
            let lhs = Word(vec![z.0[0], Letter::neg(x.0[0].gen), y.0[0]]);
            Relation::new(lhs, w)
        };
        if rel.is_trivial() || !seen.insert(rel.clone()) {
            continue;
        }
        relations.push(ResidueRelation {
            square: s,
            relation: rel,
        });
    }
    Ok(Residue {
        generators: id.representatives(),
        relations,
    })
}

#[cfg(test)]
mod tests {
    use super::super::{Shape, SquareKind};
    use super::*;

    fn sq(i: u32, k: u32, j: u32, l: u32, kind: SquareKind) -> SingularSquare {
        SingularSquare {
            i,
            k,
            j,
            l,
            kind,
            witness: 0,
            shape: Shape::General,
        }
    }

    #[test]
    fn no_squares_only_unit_class() {
        let h = derive_identifications(&HPresentation::new(3, 4, Vec::new()));
        let id = h.identification.as_ref().unwrap();
        assert_eq!(id.unit.len(), 6);
        assert_eq!(id.classes.len(), 6);
        assert!(residue(&h).unwrap().relations.is_empty());
    }

    #[test]
    fn flush_top_propagates() {
        // (1,2;2,3): f_22 ~ f_23 by the row rule; then (2,3;2,3) column rule
        // is not applicable until f_22 ~ f_32.
        let h = HPresentation::new(
            3,
            3,
            vec![
                sq(1, 2, 2, 3, SquareKind::Lr),
                sq(2, 3, 2, 3, SquareKind::Lr),
                sq(2, 3, 1, 2, SquareKind::Ud),
            ],
        );
        let h = derive_identifications(&h);
        let id = h.identification.as_ref().unwrap();
        assert_eq!(id.classes, vec![vec![(2, 2), (2, 3), (3, 2), (3, 3)]]);
        replay_merges(&h).unwrap();
        assert_eq!(reverse_partition(&h), (id.unit.clone(), id.classes.clone()));
        let r = residue(&h).unwrap();
        assert!(r.relations.is_empty());
    }

    #[test]
    fn three_quarter_residue() {
        // the corner square makes (2,2) a unit, so (2,3;2,3) is a 3/4 square
        let h = derive_identifications(&HPresentation::new(
            3,
            4,
            vec![
                sq(1, 2, 1, 2, SquareKind::Lr),
                sq(2, 3, 2, 3, SquareKind::Lr),
            ],
        ));
        let id = h.identification.as_ref().unwrap();
        assert!(id.is_unit(2, 2));
        assert_eq!(h.squares[1].shape, Shape::ThreeQuarter);
        let r = residue(&h).unwrap();
        assert_eq!(r.relations.len(), 1);
        assert_eq!(r.relations[0].square, 1);
        let names = r.names(None);
        assert_eq!(
            r.relations[0].relation.display(&names),
            "f_3_2 f_2_3 = f_3_3"
        );
    }

    #[test]
    fn matrix_check() {
        let h = derive_identifications(&HPresentation::new(2, 2, Vec::new()));
        let y = AuxMatrix::new(vec![
            vec!["1".into(), "1".into()],
            vec!["1".into(), "a".into()],
        ])
        .unwrap();
        assert!(check_identification_matches_matrix(&h, &y).unwrap().matches);
        let y1 = AuxMatrix::new(vec![
            vec!["1".into(), "1".into()],
            vec!["1".into(), "1".into()],
        ])
        .unwrap();
        let c = check_identification_matches_matrix(&h, &y1).unwrap();
        assert!(!c.matches && !c.covers_matrix);
        assert_eq!(c.mismatches.len(), 1);
        let y3 = AuxMatrix::new(vec![vec!["1".into(); 3]; 2]).unwrap();
        assert!(check_identification_matches_matrix(&h, &y3).is_err());
    }

    #[test]
    fn replay_detects_tampering() {
        let h = derive_identifications(&HPresentation::new(
            3,
            3,
            vec![
                sq(1, 2, 2, 3, SquareKind::Lr),
                sq(2, 3, 2, 3, SquareKind::Lr),
            ],
        ));
        replay_merges(&h).unwrap();
        let mut bad = h.clone();
        let id = bad.identification.as_mut().unwrap();
        id.merges.reverse();
        id.merges.push(Merge {
            square: 1,
            rule: Rule::Column,
            premise: [(2, 2), (3, 2)],
            conclusion: [(2, 3), (3, 3)],
        });
        assert!(replay_merges(&bad).is_err());
    }
}
