//! Tietze simplification: drop trivial relators and eliminate generators
//! that occur exactly once in some relator.

use serde::Serialize;

use super::{GroupPresentation, Relation, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TietzeLimits {
    pub max_passes: usize,
    /// Total relator length may not exceed this multiple of the initial total.
    pub growth_factor: usize,
}

impl Default for TietzeLimits {
    fn default() -> Self {
        Self {
            max_passes: 200,
            growth_factor: 4,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TietzeOutcome {
    pub presentation: GroupPresentation,
    /// Names of eliminated generators, in elimination order.
    pub eliminated: Vec<String>,
    /// True when the pass budget ran out before a fixpoint.
    pub exhausted: bool,
}

/// Canonical representative of a relator up to cyclic permutation and
/// inversion, used for de-duplication.
fn canonical(w: &Word) -> Word {
    let mut best: Option<Word> = None;
    for v in [w.clone(), w.inverse()] {
        let n = v.len();
        for s in 0..n.max(1) {
            let rot = Word(v.0[s..].iter().chain(&v.0[..s]).copied().collect());
            if best.as_ref().is_none_or(|b| rot < *b) {
                best = Some(rot);
            }
        }
    }
    best.unwrap_or_default()
}

fn tidy(relators: Vec<Word>) -> Vec<Word> {
    let mut out: Vec<Word> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for r in relators {
        let r = r.cyclic_reduce();
        if !r.is_empty() && seen.insert(canonical(&r)) {
            out.push(r);
        }
    }
    out
}

/// Solves `r = 1` for the single occurrence of `gen`.
fn solve(r: &Word, gen: usize) -> Word {
    let k = r.0.iter().position(|l| l.gen == gen).expect("occurs once");
    let before = Word(r.0[..k].to_vec());
    let after = Word(r.0[k + 1..].to_vec());
    if r.0[k].inverse {
        // u g^-1 v = 1  =>  g = v u
        after.concat(&before).reduce()
    } else {
        // u g v = 1  =>  g = u^-1 v^-1
        before.inverse().concat(&after.inverse()).reduce()
    }
}

pub fn tietze_simplify(p: &GroupPresentation, limits: TietzeLimits) -> TietzeOutcome {
    let mut relators = tidy(p.relators());
    let mut alive: Vec<bool> = vec![true; p.generators.len()];
    let mut eliminated = Vec::new();
    let initial: usize = relators.iter().map(Word::len).sum();
    let budget = initial.saturating_mul(limits.growth_factor.max(1));
    let mut exhausted = false;
    let mut passes = 0;

    loop {
        // (length, generator, relator index) of each candidate elimination
        let mut candidates: Vec<(usize, usize, usize)> = Vec::new();
        for (ri, r) in relators.iter().enumerate() {
            for (g, _) in alive.iter().enumerate().filter(|(_, &a)| a) {
                if r.occurrences(g) == 1 {
                    candidates.push((r.len(), g, ri));
                }
            }
        }
        if candidates.is_empty() {
            break;
        }
        if passes >= limits.max_passes {
            exhausted = true;
            break;
        }
        passes += 1;
        candidates.sort_unstable();

        let mut applied = false;
        for &(_, g, ri) in &candidates {
            let value = solve(&relators[ri], g);
            let next: Vec<Word> = relators
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != ri)
                .map(|(_, r)| r.substitute(g, &value))
                .collect();
            let next = tidy(next);
            if next.iter().map(Word::len).sum::<usize>() > budget {
                continue;
            }
            relators = next;
            alive[g] = false;
            eliminated.push(p.generators[g].clone());
            applied = true;
            break;
        }
        if !applied {
            break;
        }
    }

    let mut renumber = vec![usize::MAX; alive.len()];
    let mut generators = Vec::new();
    for (g, _) in alive.iter().enumerate().filter(|(_, &a)| a) {
        renumber[g] = generators.len();
        generators.push(p.generators[g].clone());
    }
    let relations = relators
        .into_iter()
        .map(|r| Relation::relator(r.map_gens(|g| renumber[g])))
        .collect();
    TietzeOutcome {
        presentation: GroupPresentation {
            generators,
            relations,
        },
        eliminated,
        exhausted,
    }
}
