//! The semigroup over `R_{3,N^2}` built from the Cayley table of a finite group.

use std::collections::BTreeMap;

use serde::Serialize;

use super::{AuxMatrix, UNIT};
use crate::error::{invalid, Error, Result};
use crate::presentation::CayleyTable;
use crate::semigroup::{close, greens, idempotents, is_regular_semigroup, Eggbox, FiniteSemigroup};
use crate::transform::{b_mul, rect_band, Ambient, BElement, Transformation};

/// Column `g * N + h + 1` carries `(1, g, h)`.
pub fn column_of(n: usize, g: usize, h: usize) -> u32 {
    (g * n + h + 1) as u32
}

pub fn column_pair(n: usize, col: u32) -> (usize, usize) {
    let c = col as usize - 1;
    (c / n, c % n)
}

fn symbol(t: &CayleyTable, g: usize) -> String {
    if g == t.identity() {
        UNIT.to_string()
    } else {
        t.name(g).to_string()
    }
}

/// The `3 x N^2` matrix whose columns list `G x G` in g-major order.
pub fn build_y2(t: &CayleyTable) -> Result<AuxMatrix> {
    if let Some(g) = (1..t.order()).find(|&g| t.name(g) == UNIT) {
        return Err(invalid(format!(
            "element {} is named {UNIT:?}, reserved for the identity",
            g + 1
        )));
    }
    let n = t.order();
    let mut rows = vec![vec![UNIT.to_string(); n * n]; 3];
    for g in 0..n {
        for h in 0..n {
            let c = column_of(n, g, h) as usize - 1;
            rows[1][c] = symbol(t, g);
            rows[2][c] = symbol(t, h);
        }
    }
    AuxMatrix::new(rows)
}

/// A map on `G x G` given as a formula, used for the right components.
pub type PairMap = fn(&CayleyTable, usize, usize) -> (usize, usize);

/// Left component and right-component formula for each of `sigma_1..sigma_18`.
pub fn sigma_formula(k: usize) -> ([u32; 3], PairMap, &'static str) {
    match k {
        1 => ([1, 2, 2], |_, g, _| (g, g), "(g,h) -> (g,g)"),
        2 => ([1, 2, 1], |_, g, _| (g, 0), "(g,h) -> (g,1)"),
        3 => ([1, 1, 3], |_, _, h| (0, h), "(g,h) -> (1,h)"),
        4 => ([1, 3, 3], |_, _, h| (h, h), "(g,h) -> (h,h)"),
        5 => (
            [2, 2, 3],
            |t, g, h| (0, t.mul(h, t.inv(g))),
            "(g,h) -> (1,hg^-1)",
        ),
        6 => (
            [3, 2, 3],
            |t, g, h| (t.mul(g, t.inv(h)), 0),
            "(g,h) -> (gh^-1,1)",
        ),
        7 => ([1, 1, 2], |_, g, _| (0, g), "(g,h) -> (1,g)"),
        8 => ([2, 2, 1], |t, g, _| (0, t.inv(g)), "(g,h) -> (1,g^-1)"),
        9 => ([3, 1, 3], |t, _, h| (t.inv(h), 0), "(g,h) -> (h^-1,1)"),
        10 => ([1, 3, 1], |_, _, h| (h, 0), "(g,h) -> (h,1)"),
        11 => (
            [2, 3, 3],
            |t, g, h| {
                let x = t.mul(h, t.inv(g));
                (x, x)
            },
            "(g,h) -> (hg^-1,hg^-1)",
        ),
        12 => (
            [3, 2, 2],
            |t, g, h| {
                let x = t.mul(g, t.inv(h));
                (x, x)
            },
            "(g,h) -> (gh^-1,gh^-1)",
        ),
        13 => ([2, 1, 2], |t, g, _| (t.inv(g), 0), "(g,h) -> (g^-1,1)"),
        14 => (
            [2, 1, 1],
            |t, g, _| (t.inv(g), t.inv(g)),
            "(g,h) -> (g^-1,g^-1)",
        ),
        15 => (
            [3, 1, 1],
            |t, _, h| (t.inv(h), t.inv(h)),
            "(g,h) -> (h^-1,h^-1)",
        ),
        16 => ([3, 3, 1], |t, _, h| (0, t.inv(h)), "(g,h) -> (1,h^-1)"),
        17 => (
            [2, 3, 2],
            |t, g, h| (t.mul(h, t.inv(g)), 0),
            "(g,h) -> (hg^-1,1)",
        ),
        18 => (
            [3, 3, 2],
            |t, g, h| (0, t.mul(g, t.inv(h))),
            "(g,h) -> (1,gh^-1)",
        ),
        _ => panic!("sigma_{k} is not defined"),
    }
}

/// Defining products of `sigma_7..sigma_18` in terms of `sigma_1..sigma_6`.
pub const DERIVED_PRODUCTS: [(usize, &[usize]); 12] = [
    (7, &[1, 3]),
    (8, &[2, 5]),
    (9, &[3, 6]),
    (10, &[4, 2]),
    (11, &[5, 4]),
    (12, &[6, 1]),
    (13, &[1, 3, 6]),
    (14, &[2, 5, 4]),
    (15, &[3, 6, 1]),
    (16, &[4, 2, 5]),
    (17, &[5, 4, 2]),
    (18, &[6, 1, 3]),
];

pub fn sigma_from_formula(t: &CayleyTable, k: usize) -> Result<BElement> {
    let (left, f, _) = sigma_formula(k);
    let n = t.order();
    let right = Transformation::from_fn(n * n, |c| {
        let (g, h) = column_pair(n, c);
        let (x, y) = f(t, g, h);
        column_of(n, x, y)
    })?;
    Ok(BElement::new(Transformation::new(left.to_vec())?, right))
}

/// `sigma_1..sigma_6`, each checked idempotent.
pub fn build_sigmas2(t: &CayleyTable) -> Result<[BElement; 6]> {
    let mut out = Vec::with_capacity(6);
    for k in 1..=6 {
        let e = sigma_from_formula(t, k)?;
        if !e.is_idempotent() {
            return Err(Error::ConstructionInvariant(format!(
                "sigma_{k} is not idempotent"
            )));
        }
        out.push(e);
    }
    Ok(out.try_into().expect("six elements"))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Derived {
    pub index: usize,
    pub factors: Vec<usize>,
    pub formula: &'static str,
    pub element: BElement,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Checks2 {
    /// Set when the group is trivial and only idempotency was checked.
    pub boundary: bool,
    pub sigma_closure_size: usize,
    pub semigroup_size: usize,
    pub band_size: usize,
    pub d_size: usize,
    pub idempotents: usize,
    pub idempotents_outside_band: usize,
    pub regular: bool,
    pub eggbox_rows: usize,
    pub eggbox_cols: usize,
    pub h_class_size: usize,
    pub idempotent_free_cells: usize,
}

#[derive(Debug)]
pub struct Construction2 {
    pub table: CayleyTable,
    pub y: AuxMatrix,
    pub sigmas: [BElement; 6],
    pub derived: Vec<Derived>,
    pub semigroup: FiniteSemigroup,
    /// The non-band D-class, laid out by R- and L-classes.
    pub dclass: Option<Eggbox>,
    /// `sigma_k` name for each element index of the D-class.
    pub names: BTreeMap<usize, String>,
    pub checks: Checks2,
}

fn fail(msg: impl Into<String>) -> Error {
    Error::ConstructionInvariant(msg.into())
}

/// Fig. 2 shape: 3x3 grid, H-classes of size 2, two idempotents per row and
/// per column, three cells without idempotents, and each idempotent's
/// H-class a group of order 2.
fn check_eggbox(s: &FiniteSemigroup, egg: &Eggbox) -> Result<usize> {
    if egg.rows.len() != 3 || egg.cols.len() != 3 {
        return Err(fail(format!(
            "D-class eggbox is {}x{}, expected 3x3",
            egg.rows.len(),
            egg.cols.len()
        )));
    }
    let idem = |x: &usize| s.is_idempotent(*x);
    let mut empty = 0;
    for r in 0..3 {
        for c in 0..3 {
            let cell = &egg.cells[r][c];
            if cell.len() != 2 {
                return Err(fail(format!(
                    "H-class ({r},{c}) has {} elements",
                    cell.len()
                )));
            }
            let e: Vec<usize> = cell.iter().copied().filter(|x| idem(x)).collect();
            match e.as_slice() {
                [] => empty += 1,
                [e] => {
                    for &a in cell {
                        for &b in cell {
                            if !cell.contains(&s.mul(a, b))
                                || s.mul(*e, a) != a
                                || s.mul(a, *e) != a
                            {
                                return Err(fail(format!("H-class ({r},{c}) is not a group")));
                            }
                        }
                    }
                }
                _ => return Err(fail(format!("H-class ({r},{c}) has several idempotents"))),
            }
        }
        let in_row = egg.cells[r].iter().flatten().filter(|x| idem(x)).count();
        if in_row != 2 {
            return Err(fail(format!("eggbox row {r} has {in_row} idempotents")));
        }
    }
    for c in 0..3 {
        let in_col = (0..3)
            .flat_map(|r| &egg.cells[r][c])
            .filter(|x| idem(x))
            .count();
        if in_col != 2 {
            return Err(fail(format!("eggbox column {c} has {in_col} idempotents")));
        }
    }
    if empty != 3 {
        return Err(fail(format!(
            "{empty} idempotent-free H-classes, expected 3"
        )));
    }
    Ok(empty)
}

pub fn build_construction2(t: &CayleyTable, cap: usize) -> Result<Construction2> {
    let y = build_y2(t)?;
    let sigmas = build_sigmas2(t)?;
    let n = t.order();
    let ambient = Ambient::new(3, n * n);

    let mut derived = Vec::with_capacity(12);
    for (k, factors) in DERIVED_PRODUCTS {
        let mut e = sigmas[factors[0] - 1].clone();
        for &f in &factors[1..] {
            e = b_mul(&e, &sigmas[f - 1])?;
        }
        let expected = sigma_from_formula(t, k)?;
        if e != expected {
            let (_, _, formula) = sigma_formula(k);
            return Err(fail(format!("sigma_{k} does not match {formula}")));
        }
        derived.push(Derived {
            index: k,
            factors: factors.to_vec(),
            formula: sigma_formula(k).2,
            element: e,
        });
    }

    let sigma_closure = close(&sigmas, cap)?;
    let mut gens: Vec<BElement> = sigmas.to_vec();
    gens.extend(rect_band(ambient));
    let semigroup = close(&gens, cap)?;

    let band_size = 3 * n * n;
    let non_band: Vec<usize> = (0..semigroup.len())
        .filter(|&x| !semigroup.is_band_element(x))
        .collect();
    let idem = idempotents(&semigroup);
    let idem_outside = idem
        .iter()
        .filter(|&&x| !semigroup.is_band_element(x))
        .count();

    let mut names = BTreeMap::new();
    let all: Vec<(usize, BElement)> = (1..=6)
        .map(|k| (k, sigmas[k - 1].clone()))
        .chain(derived.iter().map(|d| (d.index, d.element.clone())))
        .collect();
    for (k, e) in &all {
        if let Some(x) = semigroup.index_of(e) {
            names.entry(x).or_insert_with(|| format!("sigma_{k}"));
        }
    }

    let boundary = n == 1;
    let g = greens(&semigroup);
    let dclass = non_band.first().map(|&x| g.eggboxes[g.d_of[x]].clone());
    let regular = is_regular_semigroup(&semigroup);
    let mut checks = Checks2 {
        boundary,
        sigma_closure_size: sigma_closure.len(),
        semigroup_size: semigroup.len(),
        band_size,
        d_size: non_band.len(),
        idempotents: idem.len(),
        idempotents_outside_band: idem_outside,
        regular,
        eggbox_rows: dclass.as_ref().map_or(0, |e| e.rows.len()),
        eggbox_cols: dclass.as_ref().map_or(0, |e| e.cols.len()),
        h_class_size: dclass
            .as_ref()
            .and_then(|e| e.cells.first()?.first().map(Vec::len))
            .unwrap_or(0),
        idempotent_free_cells: 0,
    };

    if !boundary {
        if sigma_closure.len() != 21 {
            return Err(fail(format!(
                "<sigma_1..sigma_6> has {} elements, expected 21",
                sigma_closure.len()
            )));
        }
        if non_band.len() != 18 {
            return Err(fail(format!(
                "D has {} elements, expected 18",
                non_band.len()
            )));
        }
        if names.len() != 18 {
            return Err(fail(format!(
                "sigma_1..sigma_18 name {} distinct elements, expected 18",
                names.len()
            )));
        }
        if idem_outside != 6 {
            return Err(fail(format!(
                "{idem_outside} idempotents outside the band, expected 6"
            )));
        }
        if !regular {
            return Err(fail("S is not regular"));
        }
        let egg = dclass.as_ref().expect("D is nonempty");
        if egg.size() != 18 || non_band.iter().any(|&x| g.d_of[x] != egg.d_class) {
            return Err(fail("elements outside the band do not form one D-class"));
        }
        checks.idempotent_free_cells = check_eggbox(&semigroup, egg)?;
    }

    Ok(Construction2 {
        table: t.clone(),
        y,
        sigmas,
        derived,
        semigroup,
        dclass,
        names,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::DEFAULT_CLOSURE_CAP;

    fn right(e: &BElement) -> Vec<u32> {
        e.right.images().to_vec()
    }

    #[test]
    fn k4_tables() {
        let t = CayleyTable::klein_four();
        let s = build_sigmas2(&t).unwrap();
        assert_eq!(
            right(&s[0]),
            [1, 1, 1, 1, 6, 6, 6, 6, 11, 11, 11, 11, 16, 16, 16, 16]
        );
        assert_eq!(
            right(&s[1]),
            [1, 1, 1, 1, 5, 5, 5, 5, 9, 9, 9, 9, 13, 13, 13, 13]
        );
        assert_eq!(
            right(&s[2]),
            [1, 2, 3, 4, 1, 2, 3, 4, 1, 2, 3, 4, 1, 2, 3, 4]
        );
        assert_eq!(
            right(&s[3]),
            [1, 6, 11, 16, 1, 6, 11, 16, 1, 6, 11, 16, 1, 6, 11, 16]
        );
        assert_eq!(
            right(&s[4]),
            [1, 2, 3, 4, 2, 1, 4, 3, 3, 4, 1, 2, 4, 3, 2, 1]
        );
        assert_eq!(
            right(&s[5]),
            [1, 5, 9, 13, 5, 1, 13, 9, 9, 13, 1, 5, 13, 9, 5, 1]
        );
        assert_eq!(s[5].right.apply(12), 5);
    }

    #[test]
    fn c4_tables() {
        let t = CayleyTable::cyclic(4);
        let s = build_sigmas2(&t).unwrap();
        assert_eq!(
            right(&s[4]),
            [1, 2, 3, 4, 4, 1, 2, 3, 3, 4, 1, 2, 2, 3, 4, 1]
        );
        assert_eq!(
            right(&s[5]),
            [1, 13, 9, 5, 5, 1, 13, 9, 9, 5, 1, 13, 13, 9, 5, 1]
        );
    }

    #[test]
    fn small_matrices() {
        let y = build_y2(&CayleyTable::cyclic(2)).unwrap();
        let rows: Vec<String> = y.entries().iter().map(|r| r.join("")).collect();
        assert_eq!(rows, ["1111", "11aa", "1a1a"]);
        let y = build_y2(&CayleyTable::cyclic(1)).unwrap();
        assert_eq!((y.rows(), y.cols()), (3, 1));
    }

    #[test]
    fn k4_structure() {
        let c = build_construction2(&CayleyTable::klein_four(), DEFAULT_CLOSURE_CAP).unwrap();
        assert_eq!(c.checks.sigma_closure_size, 21);
        assert_eq!(c.semigroup.len(), 66);
        assert_eq!(c.checks.idempotents, 54);
        assert_eq!(c.checks.idempotent_free_cells, 3);
    }

    #[test]
    fn trivial_group_is_boundary() {
        let c = build_construction2(&CayleyTable::cyclic(1), DEFAULT_CLOSURE_CAP).unwrap();
        assert!(c.checks.boundary);
        assert!(c.sigmas.iter().all(BElement::is_idempotent));
    }
}
