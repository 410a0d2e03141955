//! Group presentations and the algorithms used to check them.

mod abelian;
mod cayley;
mod parse;
mod tietze;
mod todd_coxeter;
mod triangular;

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

pub use abelian::{abelian_invariants, smith_diagonal};
pub use cayley::{cayley_from_coset_table, evaluate, CayleyTable};
pub use tietze::{tietze_simplify, TietzeLimits, TietzeOutcome};
pub use todd_coxeter::{todd_coxeter, CosetTable, Enumeration, DEFAULT_MAX_COSETS};
pub use triangular::{triangularize, Triangularization};

use crate::error::{invalid, Result};

/// A generator or its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter {
    pub gen: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn pos(gen: usize) -> Self {
        Self {
            gen,
            inverse: false,
        }
    }

    pub fn neg(gen: usize) -> Self {
        Self { gen, inverse: true }
    }

    pub fn inv(self) -> Self {
        Self {
            gen: self.gen,
            inverse: !self.inverse,
        }
    }

    /// Column of this letter in a coset table: `2g` or `2g + 1`.
    pub(crate) fn column(self) -> usize {
        2 * self.gen + self.inverse as usize
    }
}

/// A word in generators and inverses. The empty word is the identity.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn gen(g: usize) -> Self {
        Self(vec![Letter::pos(g)])
    }

    pub fn from_gens(gens: &[usize]) -> Self {
        Self(gens.iter().map(|&g| Letter::pos(g)).collect())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Self {
        Self(self.0.iter().rev().map(|l| l.inv()).collect())
    }

    pub fn concat(&self, other: &Word) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Self(v)
    }

    /// Free reduction: cancels adjacent `x x^-1` pairs.
    pub fn reduce(&self) -> Self {
        let mut out: Vec<Letter> = Vec::with_capacity(self.0.len());
        for &l in &self.0 {
            if out.last() == Some(&l.inv()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Self(out)
    }

    /// Free and cyclic reduction.
    pub fn cyclic_reduce(&self) -> Self {
        let w = self.reduce().0;
        let (mut s, mut e) = (0, w.len());
        while e - s >= 2 && w[s] == w[e - 1].inv() {
            s += 1;
            e -= 1;
        }
        Self(w[s..e].to_vec())
    }

    pub fn occurrences(&self, gen: usize) -> usize {
        self.0.iter().filter(|l| l.gen == gen).count()
    }

    pub fn mentions(&self, gen: usize) -> bool {
        self.0.iter().any(|l| l.gen == gen)
    }

    /// Replaces every occurrence of `gen` by `by` (and `gen^-1` by its inverse).
    pub fn substitute(&self, gen: usize, by: &Word) -> Self {
        let inv = by.inverse();
        let mut out = Vec::with_capacity(self.0.len());
        for &l in &self.0 {
            if l.gen == gen {
                out.extend_from_slice(if l.inverse { &inv.0 } else { &by.0 });
            } else {
                out.push(l);
            }
        }
        Self(out)
    }

    pub fn map_gens(&self, f: impl Fn(usize) -> usize) -> Self {
        Self(
            self.0
                .iter()
                .map(|l| Letter {
                    gen: f(l.gen),
                    inverse: l.inverse,
                })
                .collect(),
        )
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|l| !l.inverse)
    }

    /// Renders with the given generator names, `1` for the empty word.
    pub fn display<'a>(&'a self, names: &'a [String]) -> WordDisplay<'a> {
        WordDisplay { word: self, names }
    }
}

pub struct WordDisplay<'a> {
    word: &'a Word,
    names: &'a [String],
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return f.write_str("1");
        }
        for (k, l) in self.word.0.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            match self.names.get(l.gen) {
                Some(n) => f.write_str(n)?,
                None => write!(f, "?{}", l.gen)?,
            }
            if l.inverse {
                f.write_str("^-1")?;
            }
        }
        Ok(())
    }
}

/// An equation `lhs = rhs` between words.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Relation {
    pub lhs: Word,
    pub rhs: Word,
}

impl Relation {
    pub fn new(lhs: Word, rhs: Word) -> Self {
        Self { lhs, rhs }
    }

    /// `w = 1`.
    pub fn relator(w: Word) -> Self {
        Self {
            lhs: w,
            rhs: Word::empty(),
        }
    }

    /// `lhs rhs^-1`, freely reduced.
    pub fn as_relator(&self) -> Word {
        self.lhs.concat(&self.rhs.inverse()).reduce()
    }

    pub fn is_trivial(&self) -> bool {
        self.as_relator().is_empty()
    }

    pub fn swapped(&self) -> Self {
        Self {
            lhs: self.rhs.clone(),
            rhs: self.lhs.clone(),
        }
    }

    pub fn display<'a>(&'a self, names: &'a [String]) -> String {
        format!("{} = {}", self.lhs.display(names), self.rhs.display(names))
    }
}

/// Generators by name, relations as equations.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupPresentation {
    pub generators: Vec<String>,
    pub relations: Vec<Relation>,
}

impl GroupPresentation {
    pub fn new(generators: Vec<String>, relations: Vec<Relation>) -> Result<Self> {
        let p = Self {
            generators,
            relations,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let mut seen = HashSet::new();
        for g in &self.generators {
            if !parse::is_name(g) {
                return Err(invalid(format!(
                    "generator name {g:?} is not an identifier"
                )));
            }
            if !seen.insert(g.as_str()) {
                return Err(invalid(format!("generator {g} declared twice")));
            }
        }
        let n = self.generators.len();
        for r in &self.relations {
            if let Some(l) = r.lhs.0.iter().chain(&r.rhs.0).find(|l| l.gen >= n) {
                return Err(invalid(format!("generator id {} out of range", l.gen)));
            }
        }
        Ok(())
    }

    /// Parses either the line format or the bracket format `< a, b | a b = b a >`.
    pub fn parse(text: &str) -> Result<Self> {
        parse::parse_presentation(text)
    }

    pub fn generator_id(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    pub fn relators(&self) -> Vec<Word> {
        self.relations.iter().map(Relation::as_relator).collect()
    }

    /// Line format: a `generators:` header then one relation per line.
    pub fn to_text(&self) -> String {
        let mut s = String::from("generators:");
        for g in &self.generators {
            s.push(' ');
            s.push_str(g);
        }
        s.push('\n');
        for r in &self.relations {
            s.push_str(&r.display(&self.generators));
            s.push('\n');
        }
        s
    }

    pub fn relation_strings(&self) -> Vec<String> {
        self.relations
            .iter()
            .map(|r| r.display(&self.generators))
            .collect()
    }
}

impl fmt::Display for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "< {}", self.generators.join(", "))?;
        if !self.relations.is_empty() {
            write!(f, " | {}", self.relation_strings().join(", "))?;
        }
        f.write_str(" >")
    }
}

/// A presentation whose relations all read `b c = d` with `b, c, d`
/// generators.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangularPresentation {
    pub generators: Vec<String>,
    /// `(b, c, d)` with 0-based generator ids, meaning `b c = d`.
    pub triples: Vec<[usize; 3]>,
}

impl TriangularPresentation {
    pub fn new(generators: Vec<String>, triples: Vec<[usize; 3]>) -> Result<Self> {
        let p = generators.len();
        if let Some(t) = triples.iter().find(|t| t.iter().any(|&x| x >= p)) {
            return Err(invalid(format!("triple {t:?} refers past {p} generators")));
        }
        Ok(Self {
            generators,
            triples,
        })
    }

    pub fn p(&self) -> usize {
        self.generators.len()
    }

    pub fn q(&self) -> usize {
        self.triples.len()
    }

    /// Reads a presentation that is already triangular.
    pub fn from_presentation(p: &GroupPresentation) -> Option<Self> {
        let triples = p
            .relations
            .iter()
            .map(|r| match (r.lhs.letters(), r.rhs.letters()) {
                ([b, c], [d]) if !b.inverse && !c.inverse && !d.inverse => {
                    Some([b.gen, c.gen, d.gen])
                }
                _ => None,
            })
            .collect::<Option<Vec<_>>>()?;
        Some(Self {
            generators: p.generators.clone(),
            triples,
        })
    }

    pub fn to_presentation(&self) -> GroupPresentation {
        GroupPresentation {
            generators: self.generators.clone(),
            relations: self
                .triples
                .iter()
                .map(|&[b, c, d]| Relation::new(Word::from_gens(&[b, c]), Word::gen(d)))
                .collect(),
        }
    }
}
