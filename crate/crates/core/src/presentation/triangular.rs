//! Rewriting an arbitrary presentation into `b c = d` form.

use std::collections::HashMap;

use serde::Serialize;

use super::{GroupPresentation, Letter, TriangularPresentation, Word};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Triangularization {
    pub presentation: TriangularPresentation,
    /// Output generator for each input generator.
    pub generator_map: Vec<usize>,
    /// The identity generator, when one had to be introduced.
    pub identity: Option<usize>,
}

struct Builder {
    generators: Vec<String>,
    triples: Vec<[usize; 3]>,
    prefixes: HashMap<Vec<usize>, usize>,
    identity: usize,
}

impl Builder {
    fn fresh(&mut self, base: &str) -> usize {
        let mut name = base.to_string();
        let mut k = 1;
        while self.generators.contains(&name) {
            name = format!("{base}{k}");
            k += 1;
        }
        self.generators.push(name);
        self.generators.len() - 1
    }

    fn fresh_prefix(&mut self) -> usize {
        let mut k = self.prefixes.len() + 1;
        loop {
            let name = format!("y{k}");
            if !self.generators.contains(&name) {
                self.generators.push(name);
                return self.generators.len() - 1;
            }
            k += 1;
        }
    }

    /// A single generator equal to the positive word `w`.
    fn collapse(&mut self, w: &[usize]) -> usize {
        match w {
            [] => self.identity,
            [g] => *g,
            _ => {
                if let Some(&g) = self.prefixes.get(w) {
                    return g;
                }
                let head = self.collapse(&w[..w.len() - 1]);
                let g = self.fresh_prefix();
                self.triples.push([head, w[w.len() - 1], g]);
                self.prefixes.insert(w.to_vec(), g);
                g
            }
        }
    }

    fn equation(&mut self, lhs: &[usize], rhs: &[usize]) {
        let r = self.collapse(rhs);
        match lhs {
            [] => self.triples.push([self.identity, self.identity, r]),
            [l] => self.triples.push([*l, self.identity, r]),
            _ => {
                let head = self.collapse(&lhs[..lhs.len() - 1]);
                self.triples.push([head, lhs[lhs.len() - 1], r]);
            }
        }
    }
}

/// Presentations already of triangular shape, and those without relations,
/// are returned unchanged. Otherwise an identity generator `e` and formal
/// inverses `a_inv` are added, and long words are split with prefix
/// generators `y1, y2, ...`.
pub fn triangularize(p: &GroupPresentation) -> Triangularization {
    let generator_map: Vec<usize> = (0..p.generators.len()).collect();
    if let Some(t) = TriangularPresentation::from_presentation(p) {
        return Triangularization {
            presentation: t,
            generator_map,
            identity: None,
        };
    }

    let mut b = Builder {
        generators: p.generators.clone(),
        triples: Vec::new(),
        prefixes: HashMap::new(),
        identity: 0,
    };
    b.identity = b.fresh("e");
    let z = b.identity;

    let mut inverses: Vec<Option<usize>> = vec![None; p.generators.len()];
    for l in p
        .relations
        .iter()
        .flat_map(|r| r.lhs.0.iter().chain(&r.rhs.0))
    {
        if l.inverse && inverses[l.gen].is_none() {
            let name = format!("{}_inv", p.generators[l.gen]);
            inverses[l.gen] = Some(b.fresh(&name));
        }
    }
    let positive = |w: &Word| -> Vec<usize> {
        w.letters()
            .iter()
            .map(|&Letter { gen, inverse }| if inverse { inverses[gen].unwrap() } else { gen })
            .collect()
    };

    for r in &p.relations {
        let (lhs, rhs) = (positive(&r.lhs), positive(&r.rhs));
        b.equation(&lhs, &rhs);
    }

    b.triples.push([z, z, z]);
    let mut named: Vec<usize> = (0..p.generators.len()).collect();
    named.extend(inverses.iter().flatten());
    for &a in &named {
        b.triples.push([z, a, a]);
        b.triples.push([a, z, a]);
    }
    for (a, inv) in inverses.iter().enumerate() {
        if let Some(inv) = *inv {
            b.triples.push([a, inv, z]);
            b.triples.push([inv, a, z]);
        }
    }

    Triangularization {
        presentation: TriangularPresentation {
            generators: b.generators,
            triples: b.triples,
        },
        generator_map,
        identity: Some(z),
    }
}
