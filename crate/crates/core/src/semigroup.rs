//! Explicit enumeration of finite subsemigroups of `B_{I,J}`, Green's
//! relations, regularity and sandwich sets.

use std::collections::HashMap;
use std::sync::OnceLock;

use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;
use petgraph::unionfind::UnionFind;
use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::transform::{b_mul, make_rho, Ambient, BElement};

pub const DEFAULT_CLOSURE_CAP: usize = 100_000;

/// A finite semigroup given by its elements, in breadth-first closure order.
#[derive(Debug)]
pub struct FiniteSemigroup {
    ambient: Ambient,
    elements: Vec<BElement>,
    index: HashMap<BElement, usize>,
    generators: Vec<usize>,
    /// `right[i][g] = elements[i] * elements[generators[g]]`
    right: Vec<Vec<usize>>,
    table: OnceLock<Vec<u32>>,
}

/// Least subsemigroup containing `generators`, enumerated by product length.
///
/// Duplicate generators are collapsed onto their first occurrence.
pub fn close(generators: &[BElement], cap: usize) -> Result<FiniteSemigroup> {
    let first = generators
        .first()
        .ok_or_else(|| invalid("closure needs at least one generator"))?;
    let ambient = first.ambient();
    if let Some(g) = generators.iter().find(|g| g.ambient() != ambient) {
        return Err(invalid(format!(
            "generator with ambient {:?} differs from {:?}",
            g.ambient(),
            ambient
        )));
    }
    if cap < generators.len() {
        return Err(invalid(format!(
            "cap {cap} is below the generator count {}",
            generators.len()
        )));
    }

    let mut elements: Vec<BElement> = Vec::new();
    let mut index: HashMap<BElement, usize> = HashMap::new();
    let mut gens = Vec::new();
    for g in generators {
        let id = *index.entry(g.clone()).or_insert_with(|| {
            elements.push(g.clone());
            elements.len() - 1
        });
        if !gens.contains(&id) {
            gens.push(id);
        }
    }

    let mut right = Vec::new();
    let mut i = 0;
    while i < elements.len() {
        let mut row = Vec::with_capacity(gens.len());
        for &g in &gens {
            let p = b_mul(&elements[i], &elements[g])?;
            let id = match index.get(&p) {
                Some(&id) => id,
                None => {
                    if elements.len() >= cap {
                        return Err(Error::CapacityExceeded {
                            limit: cap,
                            partial: elements.len(),
                        });
                    }
                    elements.push(p.clone());
                    index.insert(p, elements.len() - 1);
                    elements.len() - 1
                }
            };
            row.push(id);
        }
        right.push(row);
        i += 1;
    }

    Ok(FiniteSemigroup {
        ambient,
        elements,
        index,
        generators: gens,
        right,
        table: OnceLock::new(),
    })
}

impl FiniteSemigroup {
    /// Rebuilds a semigroup from a stored element list, checking closure.
    pub fn from_parts(
        ambient: Ambient,
        elements: Vec<BElement>,
        generators: Vec<usize>,
    ) -> Result<Self> {
        let mut index = HashMap::with_capacity(elements.len());
        for (i, e) in elements.iter().enumerate() {
            if e.ambient() != ambient {
                return Err(invalid(format!("element {} has the wrong ambient", i + 1)));
            }
            if index.insert(e.clone(), i).is_some() {
                return Err(invalid(format!("element {} is repeated", i + 1)));
            }
        }
        if let Some(&g) = generators.iter().find(|&&g| g >= elements.len()) {
            return Err(invalid(format!("generator index {} out of range", g + 1)));
        }
        let mut right = Vec::with_capacity(elements.len());
        for (i, e) in elements.iter().enumerate() {
            let mut row = Vec::with_capacity(generators.len());
            for &g in &generators {
                let p = b_mul(e, &elements[g])?;
                let id = *index.get(&p).ok_or_else(|| {
                    invalid(format!(
                        "element list not closed: element {} times generator {}",
                        i + 1,
                        g + 1
                    ))
                })?;
                row.push(id);
            }
            right.push(row);
        }
        Ok(Self {
            ambient,
            elements,
            index,
            generators,
            right,
            table: OnceLock::new(),
        })
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[BElement] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &BElement {
        &self.elements[i]
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn index_of(&self, e: &BElement) -> Option<usize> {
        self.index.get(e).copied()
    }

    pub fn is_idempotent(&self, i: usize) -> bool {
        self.elements[i].is_idempotent()
    }

    /// Index of `rho_{ij}`, if present.
    pub fn rho(&self, i: u32, j: u32) -> Option<usize> {
        make_rho(i, j, self.ambient)
            .ok()
            .and_then(|r| self.index_of(&r))
    }

    /// Whether every `rho_{ij}` of the ambient band lies in the semigroup.
    pub fn contains_rect_band(&self) -> bool {
        (1..=self.ambient.rows as u32)
            .all(|i| (1..=self.ambient.cols as u32).all(|j| self.rho(i, j).is_some()))
    }

    pub fn is_band_element(&self, i: usize) -> bool {
        self.elements[i].rect_band_coords().is_some()
    }

    /// Product of two element indices.
    pub fn mul(&self, a: usize, b: usize) -> usize {
        if let Some(t) = self.table.get() {
            return t[a * self.len() + b] as usize;
        }
        let p = b_mul(&self.elements[a], &self.elements[b]).expect("matching ambient");
        self.index[&p]
    }

    /// Full multiplication table, row-major, built on first use.
    pub fn table(&self) -> &[u32] {
        self.table.get_or_init(|| {
            let n = self.len();
            let mut t = Vec::with_capacity(n * n);
            for a in &self.elements {
                for b in &self.elements {
                    let p = b_mul(a, b).expect("matching ambient");
                    t.push(self.index[&p] as u32);
                }
            }
            t
        })
    }

    fn left_edges(&self) -> Vec<Vec<usize>> {
        self.elements
            .iter()
            .map(|e| {
                self.generators
                    .iter()
                    .map(|&g| {
                        let p = b_mul(&self.elements[g], e).expect("matching ambient");
                        self.index[&p]
                    })
                    .collect()
            })
            .collect()
    }
}

pub fn idempotents(s: &FiniteSemigroup) -> Vec<usize> {
    (0..s.len()).filter(|&i| s.is_idempotent(i)).collect()
}

/// One D-class laid out as a grid of H-classes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Eggbox {
    pub d_class: usize,
    /// R-class ids, one per row.
    pub rows: Vec<usize>,
    /// L-class ids, one per column.
    pub cols: Vec<usize>,
    /// `cells[r][c]`: elements of the H-class at row `r`, column `c`.
    pub cells: Vec<Vec<Vec<usize>>>,
}

impl Eggbox {
    pub fn size(&self) -> usize {
        self.cells.iter().flatten().map(Vec::len).sum()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GreensStructure {
    pub r_classes: Vec<Vec<usize>>,
    pub l_classes: Vec<Vec<usize>>,
    pub d_classes: Vec<Vec<usize>>,
    pub h_classes: Vec<Vec<usize>>,
    pub r_of: Vec<usize>,
    pub l_of: Vec<usize>,
    pub d_of: Vec<usize>,
    pub h_of: Vec<usize>,
    pub eggboxes: Vec<Eggbox>,
}

/// Sorts each class, orders classes by least member, and returns the
/// element-to-class map.
fn normalize(mut classes: Vec<Vec<usize>>, n: usize) -> (Vec<Vec<usize>>, Vec<usize>) {
    for c in &mut classes {
        c.sort_unstable();
    }
    classes.sort_unstable_by_key(|c| c[0]);
    let mut of = vec![0; n];
    for (k, c) in classes.iter().enumerate() {
        for &x in c {
            of[x] = k;
        }
    }
    (classes, of)
}

fn scc_classes(edges: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut g = DiGraph::<(), ()>::with_capacity(edges.len(), 0);
    let nodes: Vec<_> = (0..edges.len()).map(|_| g.add_node(())).collect();
    for (a, out) in edges.iter().enumerate() {
        for &b in out {
            g.add_edge(nodes[a], nodes[b], ());
        }
    }
    tarjan_scc(&g)
        .into_iter()
        .map(|c| c.into_iter().map(|n| n.index()).collect())
        .collect()
}

/// Green's relations via strongly connected components of the right and
/// left Cayley graphs.
pub fn greens(s: &FiniteSemigroup) -> GreensStructure {
    let n = s.len();
    let (r_classes, r_of) = normalize(scc_classes(&s.right), n);
    let (l_classes, l_of) = normalize(scc_classes(&s.left_edges()), n);

    let mut uf = UnionFind::<usize>::new(n);
    for c in r_classes.iter().chain(&l_classes) {
        for &x in &c[1..] {
            uf.union(c[0], x);
        }
    }
    let mut by_root: HashMap<usize, Vec<usize>> = HashMap::new();
    for x in 0..n {
        by_root.entry(uf.find(x)).or_default().push(x);
    }
    let (d_classes, d_of) = normalize(by_root.into_values().collect(), n);

    let mut by_rl: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for x in 0..n {
        by_rl.entry((r_of[x], l_of[x])).or_default().push(x);
    }
    let (h_classes, h_of) = normalize(by_rl.into_values().collect(), n);

    let eggboxes = d_classes
        .iter()
        .enumerate()
        .map(|(d, members)| {
            let mut rows: Vec<usize> = members.iter().map(|&x| r_of[x]).collect();
            rows.sort_unstable();
            rows.dedup();
            let mut cols: Vec<usize> = members.iter().map(|&x| l_of[x]).collect();
            cols.sort_unstable();
            cols.dedup();
            let mut cells = vec![vec![Vec::new(); cols.len()]; rows.len()];
            for &x in members {
                let r = rows.binary_search(&r_of[x]).unwrap();
                let c = cols.binary_search(&l_of[x]).unwrap();
                cells[r][c].push(x);
            }
            Eggbox {
                d_class: d,
                rows,
                cols,
                cells,
            }
        })
        .collect();

    GreensStructure {
        r_classes,
        l_classes,
        d_classes,
        h_classes,
        r_of,
        l_of,
        d_of,
        h_of,
        eggboxes,
    }
}

pub fn is_regular_semigroup(s: &FiniteSemigroup) -> bool {
    let n = s.len();
    let t = s.table();
    (0..n).all(|a| (0..n).any(|x| t[t[a * n + x] as usize * n + a] as usize == a))
}

/// `S(e,f) = { h in E : ehf = ef, fhe = h }`.
pub fn sandwich_set(s: &FiniteSemigroup, e: usize, f: usize) -> Result<Vec<usize>> {
    for x in [e, f] {
        if x >= s.len() || !s.is_idempotent(x) {
            return Err(invalid(format!("element {} is not an idempotent", x + 1)));
        }
    }
    Ok(sandwich_in(s, &idempotents(s), e, f))
}

fn sandwich_in(s: &FiniteSemigroup, idem: &[usize], e: usize, f: usize) -> Vec<usize> {
    let n = s.len();
    let t = s.table();
    let m = |a: usize, b: usize| t[a * n + b] as usize;
    let ef = m(e, f);
    idem.iter()
        .copied()
        .filter(|&h| m(m(e, h), f) == ef && m(m(f, h), e) == h)
        .collect()
}

pub fn is_regular_biorder(s: &FiniteSemigroup) -> bool {
    let idem = idempotents(s);
    idem.iter().all(|&e| {
        idem.iter()
            .all(|&f| !sandwich_in(s, &idem, e, f).is_empty())
    })
}

/// All `(e, h, f)` with `h` in `S(e,f)`, ordered by `e`, then `f`, then `h`.
pub fn rig_relations(s: &FiniteSemigroup) -> Vec<(usize, usize, usize)> {
    let idem = idempotents(s);
    let mut out = Vec::new();
    for &e in &idem {
        for &f in &idem {
            out.extend(sandwich_in(s, &idem, e, f).into_iter().map(|h| (e, h, f)));
        }
    }
    out
}
