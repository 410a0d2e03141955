//! Randomized small instances and the laws checked on them.

use std::collections::BTreeMap;

use igmax::ig::{
    derive_identifications, h1_presentation, replay_merges, replay_witnesses, reverse_partition,
    singular_squares, SquareKind,
};
use igmax::presentation::{
    abelian_invariants, tietze_simplify, todd_coxeter, triangularize, Enumeration,
    GroupPresentation, Letter, Relation, TietzeLimits, Word,
};
use igmax::semigroup::{close, FiniteSemigroup};
use igmax::transform::{b_mul, make_rho, rect_band, Ambient, BElement, Transformation};
use rand::seq::SliceRandom;
use rand::Rng;

pub type Check = Result<(), String>;

pub fn transformation(rng: &mut impl Rng, n: usize) -> Transformation {
    Transformation::new((0..n).map(|_| rng.gen_range(1..=n as u32)).collect()).unwrap()
}

/// A random idempotent: a nonempty set of fixed points, everything else
/// sent into it.
pub fn idempotent(rng: &mut impl Rng, n: usize) -> Transformation {
    let mut points: Vec<u32> = (1..=n as u32).collect();
    points.shuffle(rng);
    let fixed = &points[..rng.gen_range(1..=n)];
    let images = (1..=n as u32)
        .map(|x| {
            if fixed.contains(&x) {
                x
            } else {
                *fixed.choose(rng).unwrap()
            }
        })
        .collect();
    Transformation::new(images).unwrap()
}

pub fn ambient(rng: &mut impl Rng, max: usize) -> Ambient {
    Ambient::new(rng.gen_range(1..=max), rng.gen_range(1..=max))
}

pub fn element(rng: &mut impl Rng, a: Ambient) -> BElement {
    BElement::new(transformation(rng, a.rows), transformation(rng, a.cols))
}

pub fn associativity(rng: &mut impl Rng) -> Check {
    let a = ambient(rng, 6);
    let (x, y, z) = (element(rng, a), element(rng, a), element(rng, a));
    let left = b_mul(&b_mul(&x, &y).unwrap(), &z).unwrap();
    let right = b_mul(&x, &b_mul(&y, &z).unwrap()).unwrap();
    if left == right {
        Ok(())
    } else {
        Err(format!("({x:?} {y:?}) {z:?} != {x:?} ({y:?} {z:?})"))
    }
}

pub fn band_law(rng: &mut impl Rng) -> Check {
    let a = ambient(rng, 6);
    let i = rng.gen_range(1..=a.rows as u32);
    let k = rng.gen_range(1..=a.rows as u32);
    let j = rng.gen_range(1..=a.cols as u32);
    let l = rng.gen_range(1..=a.cols as u32);
    let p = b_mul(&make_rho(i, j, a).unwrap(), &make_rho(k, l, a).unwrap()).unwrap();
    if p == make_rho(i, l, a).unwrap() {
        Ok(())
    } else {
        Err(format!("rho_{i}{j} rho_{k}{l} != rho_{i}{l} in {a:?}"))
    }
}

/// The band of a random ambient of degree at most 4 with one to three
/// random idempotents adjoined.
pub fn semigroup(rng: &mut impl Rng) -> FiniteSemigroup {
    loop {
        let a = Ambient::new(rng.gen_range(2..=4), rng.gen_range(2..=4));
        let mut gens = rect_band(a);
        for _ in 0..rng.gen_range(1..=3) {
            gens.push(BElement::new(
                idempotent(rng, a.rows),
                idempotent(rng, a.cols),
            ));
        }
        if let Ok(s) = close(&gens, 20_000) {
            return s;
        }
    }
}

pub fn sigma_symmetry(s: &FiniteSemigroup) -> Check {
    let squares = singular_squares(s).map_err(|e| e.to_string())?;
    let witness: BTreeMap<_, usize> = squares.iter().map(|sq| (sq.key(), sq.witness)).collect();
    for sq in &squares {
        let mirror = match sq.kind {
            SquareKind::Lr => (sq.k, sq.i, sq.j, sq.l, sq.kind),
            SquareKind::Ud => (sq.i, sq.k, sq.l, sq.j, sq.kind),
        };
        if witness.get(&mirror) != Some(&sq.witness) {
            return Err(format!("{sq} has no mirror with the same witness"));
        }
    }
    Ok(())
}

pub fn witness_replay(s: &FiniteSemigroup) -> Check {
    let squares = singular_squares(s).map_err(|e| e.to_string())?;
    replay_witnesses(s, &squares)
}

pub fn merge_replay(s: &FiniteSemigroup) -> Check {
    let h = derive_identifications(&h1_presentation(s).map_err(|e| e.to_string())?);
    replay_merges(&h)?;
    let id = h.identification.as_ref().unwrap();
    if reverse_partition(&h) != (id.unit.clone(), id.classes.clone()) {
        return Err("reverse-order closure gives another partition".into());
    }
    Ok(())
}

/// One or two generators, each with a power relator, plus up to two random
/// relators; most of these groups are finite.
pub fn presentation(rng: &mut impl Rng) -> GroupPresentation {
    let gens = rng.gen_range(1..=2);
    let mut relations = Vec::new();
    for g in 0..gens {
        let k = rng.gen_range(1..=5);
        relations.push(Relation::relator(Word(vec![Letter::pos(g); k])));
    }
    for _ in 0..rng.gen_range(0..=2) {
        let len = rng.gen_range(1..=5);
        let w = Word(
            (0..len)
                .map(|_| {
                    let g = rng.gen_range(0..gens);
                    if rng.gen_bool(0.3) {
                        Letter::neg(g)
                    } else {
                        Letter::pos(g)
                    }
                })
                .collect(),
        );
        relations.push(Relation::new(w, Word::empty()));
    }
    GroupPresentation::new(
        ["a", "b"][..gens].iter().map(|s| s.to_string()).collect(),
        relations,
    )
    .unwrap()
}

fn order(p: &GroupPresentation, cap: usize) -> Option<usize> {
    match todd_coxeter(p, &[], cap).ok()? {
        Enumeration::Complete(c) => Some(c.index()),
        Enumeration::Overflow { .. } => None,
    }
}

/// Same order when the first group is finite, same abelian invariants
/// always.
fn same_group(p: &GroupPresentation, q: &GroupPresentation, what: &str) -> Check {
    let ap = abelian_invariants(p).map_err(|e| e.to_string())?;
    let aq = abelian_invariants(q).map_err(|e| e.to_string())?;
    if ap != aq {
        return Err(format!("{what}: invariants {ap:?} became {aq:?} for {p}"));
    }
    if let Some(n) = order(p, 2_000) {
        let m = order(q, 100_000);
        if m != Some(n) {
            return Err(format!("{what}: order {n} became {m:?} for {p} -> {q}"));
        }
    }
    Ok(())
}

pub fn tietze_preserves(rng: &mut impl Rng) -> Check {
    let p = presentation(rng);
    let q = tietze_simplify(&p, TietzeLimits::default()).presentation;
    same_group(&p, &q, "tietze")
}

pub fn triangularize_preserves(rng: &mut impl Rng) -> Check {
    let p = presentation(rng);
    let q = triangularize(&p).presentation.to_presentation();
    same_group(&p, &q, "triangularize")
}
