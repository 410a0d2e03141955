use std::collections::{HashSet, VecDeque};

use serde::Serialize;

use super::{CosetTable, Enumeration, GroupPresentation, Letter, Word};
use crate::error::{invalid, Error, Result};

/// Multiplication table of a finite group; element 0 is the identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CayleyTable {
    names: Vec<String>,
    table: Vec<Vec<usize>>,
    inverse: Vec<usize>,
}

impl CayleyTable {
    /// Validates the group axioms; the identity must be listed first.
    pub fn new(names: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::Validation("a group has at least one element".into()));
        }
        let mut seen = HashSet::new();
        if let Some(dup) = names.iter().find(|s| !seen.insert(s.as_str())) {
            return Err(Error::Validation(format!("element name {dup} repeated")));
        }
        if table.len() != n || table.iter().any(|row| row.len() != n) {
            return Err(Error::Validation(format!("table must be {n}x{n}")));
        }
        for (a, row) in table.iter().enumerate() {
            if let Some((b, &v)) = row.iter().enumerate().find(|(_, &v)| v >= n) {
                return Err(Error::Validation(format!(
                    "closure: product {}*{} = {} is not an element",
                    names[a],
                    names[b],
                    v + 1
                )));
            }
        }
        let is_identity = |e: usize| (0..n).all(|x| table[e][x] == x && table[x][e] == x);
        if !is_identity(0) {
            return Err(match (1..n).find(|&e| is_identity(e)) {
                Some(e) => Error::Validation(format!(
                    "identity: {} is the identity but must be listed first",
                    names[e]
                )),
                None => Error::Validation(format!(
                    "identity: {} is not a two-sided identity and no other element is",
                    names[0]
                )),
            });
        }
        let mut inverse = Vec::with_capacity(n);
        for a in 0..n {
            match (0..n).find(|&b| table[a][b] == 0 && table[b][a] == 0) {
                Some(b) => inverse.push(b),
                None => {
                    return Err(Error::Validation(format!(
                        "inverse: {} has no two-sided inverse",
                        names[a]
                    )))
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = table[a][b];
                for c in 0..n {
                    if table[ab][c] != table[a][table[b][c]] {
                        return Err(Error::Validation(format!(
                            "associativity fails at ({}, {}, {})",
                            names[a], names[b], names[c]
                        )));
                    }
                }
            }
        }
        Ok(Self {
            names,
            table,
            inverse,
        })
    }

    /// Cyclic group of order `n`, elements `1, a, b, ...` with the k-th
    /// letter standing for the k-th power of the generator.
    pub fn cyclic(n: usize) -> Self {
        let table = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        Self::new(letter_names(n), table).expect("cyclic group")
    }

    /// Klein four-group `{1, a, b, c}` with `ab = c`.
    pub fn klein_four() -> Self {
        let table = (0..4).map(|a| (0..4).map(|b| a ^ b).collect()).collect();
        Self::new(letter_names(4), table).expect("Klein four-group")
    }

    /// Dihedral group of order `2k`: `r^i` at index `i`, `s r^i` at `k + i`.
    pub fn dihedral(k: usize) -> Self {
        let n = 2 * k;
        let mul = |a: usize, b: usize| -> usize {
            let (fa, ra) = (a / k, a % k);
            let (fb, rb) = (b / k, b % k);
            // s^fa r^ra s^fb r^rb = s^(fa+fb) r^((-1)^fb ra + rb)
            let r = if fb == 0 { ra + rb } else { k - ra + rb };
            ((fa + fb) % 2) * k + r % k
        };
        let table = (0..n)
            .map(|a| (0..n).map(|b| mul(a, b)).collect())
            .collect();
        Self::new(letter_names(n), table).expect("dihedral group")
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn element(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// The table read as a presentation: generators are the non-identity
    /// elements, with one relation `a b = ab` per nontrivial product.
    pub fn to_presentation(&self) -> GroupPresentation {
        let n = self.order();
        let gens: Vec<String> = self.names[1..].to_vec();
        let word = |x: usize| {
            if x == 0 {
                Word::empty()
            } else {
                Word::gen(x - 1)
            }
        };
        let mut relations = Vec::new();
        for a in 1..n {
            for b in 1..n {
                relations.push(super::Relation::new(
                    Word::from_gens(&[a - 1, b - 1]),
                    word(self.mul(a, b)),
                ));
            }
        }
        GroupPresentation {
            generators: gens,
            relations,
        }
    }
}

fn letter_names(n: usize) -> Vec<String> {
    (0..n)
        .map(|k| match k {
            0 => "1".to_string(),
            k if k <= 26 => ((b'a' + (k - 1) as u8) as char).to_string(),
            k => format!("g{k}"),
        })
        .collect()
}

/// Product in `t` of the assigned images of the letters of `w`.
pub fn evaluate(t: &CayleyTable, assignment: &[usize], w: &Word) -> Result<usize> {
    let mut acc = t.identity();
    for l in w.letters() {
        let &x = assignment
            .get(l.gen)
            .ok_or_else(|| invalid(format!("generator id {} is unassigned", l.gen)))?;
        if x >= t.order() {
            return Err(invalid(format!(
                "generator id {} assigned to a non-element",
                l.gen
            )));
        }
        acc = t.mul(acc, if l.inverse { t.inv(x) } else { x });
    }
    Ok(acc)
}

/// Regular representation of a group enumerated over the trivial subgroup.
/// Elements are named by their breadth-first spanning-tree words.
pub fn cayley_from_coset_table(e: &Enumeration, generator_names: &[String]) -> Result<CayleyTable> {
    let t: &CosetTable = match e {
        Enumeration::Complete(t) => t,
        Enumeration::Overflow { .. } => return Err(invalid("coset enumeration did not complete")),
    };
    if !t.trivial_subgroup {
        return Err(invalid("coset table is not over the trivial subgroup"));
    }
    if generator_names.len() != t.ngens {
        return Err(invalid("generator name count does not match the table"));
    }
    let n = t.index();
    let cols = 2 * t.ngens;
    if t.rows
        .iter()
        .any(|r| r.len() != cols || r.iter().any(|&d| d >= n))
    {
        return Err(invalid("coset table is incomplete"));
    }

    // spanning tree from coset 0
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
    let mut order = vec![0];
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut queue = VecDeque::from([0]);
    while let Some(c) = queue.pop_front() {
        for x in 0..cols {
            let d = t.rows[c][x];
            if !seen[d] {
                seen[d] = true;
                parent[d] = Some((c, x));
                order.push(d);
                queue.push_back(d);
            }
        }
    }
    if order.len() != n {
        return Err(invalid("coset table is not connected"));
    }

    let mut words: Vec<Word> = vec![Word::empty(); n];
    for &d in &order[1..] {
        let (c, x) = parent[d].unwrap();
        let mut w = words[c].clone();
        w.0.push(Letter {
            gen: x / 2,
            inverse: x % 2 == 1,
        });
        words[d] = w;
    }
    let names: Vec<String> = words
        .iter()
        .map(|w| {
            if w.is_empty() {
                "1".to_string()
            } else {
                w.display(generator_names).to_string().replace(' ', "*")
            }
        })
        .collect();

    let mut table = vec![vec![0; n]; n];
    for (i, row) in table.iter_mut().enumerate() {
        row[0] = i;
        for &d in &order[1..] {
            let (c, x) = parent[d].unwrap();
            row[d] = t.rows[row[c]][x];
        }
    }
    CayleyTable::new(names, table)
}
