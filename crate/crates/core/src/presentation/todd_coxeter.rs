//! HLT coset enumeration with union-find coincidence handling.
//!
//! Columns of the coset table are `2g` for generator `g` and `2g + 1` for its
//! inverse. Cosets are processed in definition order, so runs are
//! deterministic.

use serde::Serialize;

use super::{GroupPresentation, Word};
use crate::error::{invalid, Result};

pub const DEFAULT_MAX_COSETS: usize = 20_000;

const NONE: u32 = u32::MAX;

/// A complete coset table; coset 0 is the subgroup itself.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CosetTable {
    pub ngens: usize,
    /// `rows[c][col]`: image of coset `c` under the column's letter.
    pub rows: Vec<Vec<usize>>,
    pub trivial_subgroup: bool,
}

impl CosetTable {
    pub fn index(&self) -> usize {
        self.rows.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Enumeration {
    Complete(CosetTable),
    /// The coset budget ran out; the group may be infinite.
    Overflow {
        cosets_used: usize,
    },
}

impl Enumeration {
    pub fn index(&self) -> Option<usize> {
        match self {
            Enumeration::Complete(t) => Some(t.index()),
            Enumeration::Overflow { .. } => None,
        }
    }
}

struct Overflow;

struct Enumerator {
    cols: usize,
    table: Vec<u32>,
    parent: Vec<u32>,
    max: usize,
    queue: Vec<usize>,
}

impl Enumerator {
    fn get(&self, c: usize, x: usize) -> Option<usize> {
        let v = self.table[c * self.cols + x];
        (v != NONE).then_some(v as usize)
    }

    fn set(&mut self, c: usize, x: usize, d: usize) {
        self.table[c * self.cols + x] = d as u32;
    }

    fn unset(&mut self, c: usize, x: usize) {
        self.table[c * self.cols + x] = NONE;
    }

    fn is_live(&self, c: usize) -> bool {
        self.parent[c] as usize == c
    }

    fn new_coset(&mut self) -> Result<usize, Overflow> {
        let n = self.parent.len();
        if n >= self.max {
            return Err(Overflow);
        }
        self.parent.push(n as u32);
        self.table.extend(std::iter::repeat_n(NONE, self.cols));
        Ok(n)
    }

    fn define(&mut self, c: usize, x: usize) -> Result<usize, Overflow> {
        let d = self.new_coset()?;
        self.set(c, x, d);
        self.set(d, x ^ 1, c);
        Ok(d)
    }

    fn rep(&mut self, c: usize) -> usize {
        let mut r = c;
        while self.parent[r] as usize != r {
            r = self.parent[r] as usize;
        }
        let mut c = c;
        while self.parent[c] as usize != r {
            let next = self.parent[c] as usize;
            self.parent[c] = r as u32;
            c = next;
        }
        r
    }

    fn merge(&mut self, a: usize, b: usize) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a == b {
            return;
        }
        let (lo, hi) = (a.min(b), a.max(b));
        self.parent[hi] = lo as u32;
        self.queue.push(hi);
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let e = self.queue[i];
            i += 1;
            for x in 0..self.cols {
                let Some(f) = self.get(e, x) else { continue };
                self.unset(f, x ^ 1);
                let e1 = self.rep(e);
                let f1 = self.rep(f);
                if let Some(g) = self.get(e1, x) {
                    self.merge(f1, g);
                } else if let Some(g) = self.get(f1, x ^ 1) {
                    self.merge(e1, g);
                } else {
                    self.set(e1, x, f1);
                    self.set(f1, x ^ 1, e1);
                }
            }
        }
        self.queue.clear();
    }

    fn scan_and_fill(&mut self, c: usize, w: &[usize]) -> Result<(), Overflow> {
        let (mut f, mut b) = (c, c);
        let (mut i, mut j) = (0, w.len());
        loop {
            while i < j {
                match self.get(f, w[i]) {
                    Some(n) => {
                        f = n;
                        i += 1;
                    }
                    None => break,
                }
            }
            if i == j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j > i {
                match self.get(b, w[j - 1] ^ 1) {
                    Some(n) => {
                        b = n;
                        j -= 1;
                    }
                    None => break,
                }
            }
            if j == i {
                self.coincidence(f, b);
                return Ok(());
            }
            if j == i + 1 {
                self.set(f, w[i], b);
                self.set(b, w[i] ^ 1, f);
                return Ok(());
            }
            self.define(f, w[i])?;
        }
    }

    fn run(&mut self, relators: &[Vec<usize>], subgroup: &[Vec<usize>]) -> Result<(), Overflow> {
        self.new_coset()?;
        for w in subgroup {
            let r = self.rep(0);
            self.scan_and_fill(r, w)?;
        }
        let mut c = 0;
        while c < self.parent.len() {
            for r in relators {
                if !self.is_live(c) {
                    break;
                }
                self.scan_and_fill(c, r)?;
            }
            if self.is_live(c) {
                for x in 0..self.cols {
                    if self.get(c, x).is_none() {
                        self.define(c, x)?;
                    }
                }
            }
            c += 1;
        }
        Ok(())
    }

    fn compact(&mut self, ngens: usize, trivial_subgroup: bool) -> CosetTable {
        let n = self.parent.len();
        let mut new_id = vec![usize::MAX; n];
        let mut live = Vec::new();
        for c in 0..n {
            if self.is_live(c) {
                new_id[c] = live.len();
                live.push(c);
            }
        }
        let rows = live
            .iter()
            .map(|&c| {
                (0..self.cols)
                    .map(|x| {
                        let d = self.get(c, x).expect("complete table");
                        new_id[self.rep(d)]
                    })
                    .collect()
            })
            .collect();
        CosetTable {
            ngens,
            rows,
            trivial_subgroup,
        }
    }
}

fn columns(w: &Word) -> Vec<usize> {
    w.letters().iter().map(|l| l.column()).collect()
}

/// Enumerates the cosets of the subgroup generated by `subgroup` (the
/// trivial subgroup when empty).
pub fn todd_coxeter(
    p: &GroupPresentation,
    subgroup: &[Word],
    max_cosets: usize,
) -> Result<Enumeration> {
    if max_cosets == 0 {
        return Err(invalid("max_cosets must be positive"));
    }
    p.validate()?;
    let ngens = p.generators.len();
    if let Some(l) = subgroup
        .iter()
        .flat_map(|w| w.letters())
        .find(|l| l.gen >= ngens)
    {
        return Err(invalid(format!(
            "subgroup word uses generator id {}",
            l.gen
        )));
    }
    let relators: Vec<Vec<usize>> = p
        .relators()
        .iter()
        .map(|r| columns(&r.cyclic_reduce()))
        .filter(|r| !r.is_empty())
        .collect();
    let sub: Vec<Vec<usize>> = subgroup.iter().map(|w| columns(&w.reduce())).collect();
    let trivial_subgroup = sub.iter().all(|w| w.is_empty());

    let mut e = Enumerator {
        cols: 2 * ngens,
        table: Vec::new(),
        parent: Vec::new(),
        max: max_cosets,
        queue: Vec::new(),
    };
    Ok(match e.run(&relators, &sub) {
        Ok(()) => Enumeration::Complete(e.compact(ngens, trivial_subgroup)),
        Err(Overflow) => Enumeration::Overflow {
            cosets_used: e.parent.len(),
        },
    })
}
