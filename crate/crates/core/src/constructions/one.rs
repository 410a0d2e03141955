//! The semigroup built from a triangular presentation `<a_1..a_p | b_r c_r = d_r>`.

use serde::Serialize;

use super::{AuxMatrix, UNIT};
use crate::error::{invalid, Error, Result};
use crate::presentation::TriangularPresentation;
use crate::semigroup::{close, idempotents, FiniteSemigroup};
use crate::transform::{b_mul, make_rho, rect_band, Ambient, BElement, Transformation};

/// The `m x n` matrix with `m = 1 + 2q`, `n = 1 + p + 2q`.
pub fn build_y1(t: &TriangularPresentation) -> AuxMatrix {
    let (p, q) = (t.p(), t.q());
    let (m, n) = (1 + 2 * q, 1 + p + 2 * q);
    let name = |g: usize| t.generators[g].clone();
    let mut y = vec![vec![UNIT.to_string(); n]; m];
    for row in y.iter_mut().skip(1) {
        for g in 0..p {
            row[1 + g] = name(g);
        }
    }
    for (r, &[b, c, d]) in t.triples.iter().enumerate() {
        let u = r + 1;
        // rows 2u, 2u+1 and columns p+2u, p+2u+1, as 0-based indices
        let (r0, c0) = (2 * u - 1, p + 2 * u - 1);
        y[r0][c0 + 1] = name(c);
        y[r0 + 1][c0] = name(b);
        y[r0 + 1][c0 + 1] = name(d);
    }
    AuxMatrix::new(y).expect("first row and column are units")
}

/// `sigma_u` for `u` in `2..=m`: left sends `1` to `1` and everything else to
/// `u`; right fixes `1..=p+1` and sends `x` to `r + 1` where `y_ux = a_r`
/// (`a_0 = 1`).
pub fn build_sigma1(u: u32, y: &AuxMatrix, p: usize) -> Result<BElement> {
    let (m, n) = (y.rows(), y.cols());
    if u < 2 || u as usize > m {
        return Err(invalid(format!("row {u} outside 2..={m}")));
    }
    if n < p + 1 {
        return Err(invalid(format!(
            "matrix has {n} columns, fewer than p + 1 = {}",
            p + 1
        )));
    }
    let left = Transformation::from_fn(m, |x| if x == 1 { 1 } else { u })?;
    let generator_block = &y.row(u)[1..=p];
    let mut images = Vec::with_capacity(n);
    for x in 1..=n as u32 {
        if x as usize <= p + 1 {
            images.push(x);
            continue;
        }
        let entry = y.get(u, x);
        let r = if entry == UNIT {
            0
        } else {
            generator_block
                .iter()
                .position(|a| a == entry)
                .ok_or_else(|| {
                    invalid(format!(
                        "entry y({u},{x}) = {entry} is not 1 or a generator"
                    ))
                })?
                + 1
        };
        images.push(r as u32 + 1);
    }
    let e = BElement::new(left, Transformation::new(images)?);
    if !e.is_idempotent() {
        return Err(Error::ConstructionInvariant(format!(
            "sigma_{u} is not idempotent"
        )));
    }
    Ok(e)
}

/// `tau_u` for `u` in `1..=q`: left fixes `2u+1` and sends everything else to
/// `2u`; right sends `p+2u` and `p+2u+1` to `p+2u` and everything else to `1`.
pub fn build_tau1(u: u32, m: usize, n: usize, p: usize) -> Result<BElement> {
    let q = (m.saturating_sub(1)) / 2;
    if u < 1 || u as usize > q || m != 1 + 2 * q || n != 1 + p + 2 * q {
        return Err(invalid(format!(
            "tau_{u} undefined for m = {m}, n = {n}, p = {p}"
        )));
    }
    let (r, c) = (2 * u, p as u32 + 2 * u);
    let left = Transformation::from_fn(m, |x| if x == r + 1 { r + 1 } else { r })?;
    let right = Transformation::from_fn(n, |x| if x == c || x == c + 1 { c } else { 1 })?;
    let e = BElement::new(left, right);
    if !e.is_idempotent() {
        return Err(Error::ConstructionInvariant(format!(
            "tau_{u} is not idempotent"
        )));
    }
    Ok(e)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Census1 {
    pub idempotents: usize,
    pub expected_idempotents: usize,
    pub sigma_sigma_checked: usize,
    pub tau_tau_checked: usize,
    pub sigma_tau_checked: usize,
    pub tau_sigma_checked: usize,
    /// `(u, v)` with `tau_u sigma_v` not idempotent.
    pub tau_sigma_non_idempotent: Vec<(u32, u32)>,
}

#[derive(Debug)]
pub struct Construction1 {
    pub presentation: TriangularPresentation,
    pub y: AuxMatrix,
    /// `sigma_2 .. sigma_m`.
    pub sigmas: Vec<BElement>,
    /// `tau_1 .. tau_q`.
    pub taus: Vec<BElement>,
    pub semigroup: FiniteSemigroup,
    pub census: Census1,
}

impl Construction1 {
    pub fn m(&self) -> usize {
        self.y.rows()
    }

    pub fn n(&self) -> usize {
        self.y.cols()
    }

    pub fn sigma(&self, u: u32) -> &BElement {
        &self.sigmas[u as usize - 2]
    }

    pub fn tau(&self, u: u32) -> &BElement {
        &self.taus[u as usize - 1]
    }
}

fn violation(msg: String) -> Error {
    Error::ConstructionInvariant(msg)
}

/// Checks the idempotent census and the four product laws.
pub fn census1(sigmas: &[BElement], taus: &[BElement], s: &FiniteSemigroup) -> Result<Census1> {
    let a = s.ambient();
    let rho = |i: u32, j: u32| make_rho(i, j, a);
    let mut expected: Vec<&BElement> = sigmas.iter().chain(taus).collect();
    let band = rect_band(a);
    expected.extend(band.iter());
    let idem = idempotents(s);
    for &e in &idem {
        let el = s.element(e);
        if !expected.contains(&el) {
            return Err(violation(format!("unexpected idempotent {el:?}")));
        }
    }
    for e in &expected {
        if s.index_of(e).is_none() {
            return Err(violation(format!("idempotent {e:?} missing from S")));
        }
    }
    // duplicates among sigma/tau would shrink the census
    let mut distinct = expected.clone();
    distinct.sort();
    distinct.dedup();
    if distinct.len() != expected.len() {
        return Err(violation(
            "sigma/tau/band idempotents are not distinct".into(),
        ));
    }

    let mut census = Census1 {
        idempotents: idem.len(),
        expected_idempotents: expected.len(),
        sigma_sigma_checked: 0,
        tau_tau_checked: 0,
        sigma_tau_checked: 0,
        tau_sigma_checked: 0,
        tau_sigma_non_idempotent: Vec::new(),
    };
    for (x, su) in sigmas.iter().enumerate() {
        let u = x as u32 + 2;
        for (y, sv) in sigmas.iter().enumerate() {
            if b_mul(su, sv)? != *su {
                return Err(violation(format!("sigma_{u} sigma_{} != sigma_{u}", y + 2)));
            }
            census.sigma_sigma_checked += 1;
        }
        for (y, tv) in taus.iter().enumerate() {
            if b_mul(su, tv)? != rho(u, 1)? {
                return Err(violation(format!("sigma_{u} tau_{} != rho_{u},1", y + 1)));
            }
            census.sigma_tau_checked += 1;
        }
    }
    for (x, tu) in taus.iter().enumerate() {
        let u = x as u32 + 1;
        for (y, tv) in taus.iter().enumerate() {
            let want = if x == y { tu.clone() } else { rho(2 * u, 1)? };
            if b_mul(tu, tv)? != want {
                return Err(violation(format!("tau_{u} tau_{} is {want:?}", y + 1)));
            }
            census.tau_tau_checked += 1;
        }
        for (y, sv) in sigmas.iter().enumerate() {
            let v = y as u32 + 2;
            let prod = b_mul(tu, sv)?;
            if prod.is_idempotent() {
                if prod != rho(2 * u, 1)? {
                    return Err(violation(format!(
                        "tau_{u} sigma_{v} is idempotent but not rho_{},1: {prod:?}",
                        2 * u
                    )));
                }
            } else {
                census.tau_sigma_non_idempotent.push((u, v));
            }
            census.tau_sigma_checked += 1;
        }
    }
    Ok(census)
}

pub fn build_construction1(t: &TriangularPresentation, cap: usize) -> Result<Construction1> {
    build_construction1_with(t, cap, &[])
}

/// As [`build_construction1`], with extra generators adjoined before closing.
pub fn build_construction1_with(
    t: &TriangularPresentation,
    cap: usize,
    extra: &[BElement],
) -> Result<Construction1> {
    if t.q() == 0 {
        return Err(Error::UnsupportedInput(
            "construction needs at least one relation b c = d".into(),
        ));
    }
    let (p, q) = (t.p(), t.q());
    let y = build_y1(t);
    let (m, n) = (y.rows(), y.cols());
    let sigmas = (2..=m as u32)
        .map(|u| build_sigma1(u, &y, p))
        .collect::<Result<Vec<_>>>()?;
    let taus = (1..=q as u32)
        .map(|u| build_tau1(u, m, n, p))
        .collect::<Result<Vec<_>>>()?;
    let ambient = Ambient::new(m, n);
    if let Some(e) = extra.iter().find(|e| e.ambient() != ambient) {
        return Err(invalid(format!(
            "extra generator {e:?} has the wrong ambient"
        )));
    }
    let mut gens: Vec<BElement> = sigmas.iter().chain(&taus).cloned().collect();
    gens.extend(rect_band(ambient));
    gens.extend(extra.iter().cloned());
    let semigroup = close(&gens, cap)?;
    let census = census1(&sigmas, &taus, &semigroup)?;
    Ok(Construction1 {
        presentation: t.clone(),
        y,
        sigmas,
        taus,
        semigroup,
        census,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::DEFAULT_CLOSURE_CAP;

    fn klein() -> TriangularPresentation {
        TriangularPresentation::new(
            vec!["a".into(), "b".into(), "c".into()],
            vec![[1, 0, 2], [2, 1, 0]],
        )
        .unwrap()
    }

    fn imgs(t: &Transformation) -> Vec<u32> {
        t.images().to_vec()
    }

    #[test]
    fn klein_matrix() {
        let y = build_y1(&klein());
        let rows: Vec<String> = y.entries().iter().map(|r| r.join("")).collect();
        assert_eq!(
            rows,
            ["11111111", "1abc1a11", "1abcbc11", "1abc111b", "1abc11ca"]
        );
    }

    #[test]
    fn klein_sigmas_and_taus() {
        let t = klein();
        let y = build_y1(&t);
        let s3 = build_sigma1(3, &y, 3).unwrap();
        assert_eq!(imgs(&s3.right)[4..], [3, 4, 1, 1]);
        let s2 = build_sigma1(2, &y, 3).unwrap();
        assert_eq!(imgs(&s2.left), [1, 2, 2, 2, 2]);
        let t1 = build_tau1(1, 5, 8, 3).unwrap();
        assert_eq!(imgs(&t1.left), [2, 2, 3, 2, 2]);
        assert_eq!(imgs(&t1.right), [1, 1, 1, 1, 5, 5, 1, 1]);
        let t2 = build_tau1(2, 5, 8, 3).unwrap();
        assert_eq!(imgs(&t2.right), [1, 1, 1, 1, 1, 1, 7, 7]);
        assert!(build_tau1(3, 5, 8, 3).is_err());
        assert!(build_sigma1(1, &y, 3).is_err());
    }

    #[test]
    fn klein_census() {
        let c = build_construction1(&klein(), DEFAULT_CLOSURE_CAP).unwrap();
        assert_eq!((c.m(), c.n()), (5, 8));
        assert_eq!(c.census.idempotents, 46);
        assert!(c.census.tau_sigma_non_idempotent.contains(&(1, 3)));
    }

    #[test]
    fn single_relation() {
        let t = TriangularPresentation::new(vec!["a".into()], vec![[0, 0, 0]]).unwrap();
        let y = build_y1(&t);
        let rows: Vec<String> = y.entries().iter().map(|r| r.join("")).collect();
        assert_eq!(rows, ["1111", "1a1a", "1aaa"]);
        build_construction1(&t, DEFAULT_CLOSURE_CAP).unwrap();
    }

    #[test]
    fn no_relations_rejected() {
        let t = TriangularPresentation::new(vec!["a".into()], vec![]).unwrap();
        assert!(matches!(
            build_construction1(&t, DEFAULT_CLOSURE_CAP),
            Err(Error::UnsupportedInput(_))
        ));
    }

    #[test]
    fn bad_matrix_entry() {
        let y = AuxMatrix::new(vec![
            vec!["1".into(); 4],
            vec!["1".into(), "a".into(), "1".into(), "z".into()],
            vec!["1".into(), "a".into(), "a".into(), "a".into()],
        ])
        .unwrap();
        assert!(matches!(
            build_sigma1(2, &y, 1),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn injected_idempotent_breaks_census() {
        let t = klein();
        let extra = BElement::new(
            Transformation::new(vec![1, 2, 3, 4, 5]).unwrap(),
            Transformation::new(vec![1, 1, 1, 1, 1, 1, 1, 1]).unwrap(),
        );
        let err = build_construction1_with(&t, DEFAULT_CLOSURE_CAP, &[extra]).unwrap_err();
        assert!(matches!(err, Error::ConstructionInvariant(_)));
    }
}
