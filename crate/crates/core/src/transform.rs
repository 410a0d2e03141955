//! Transformations of `{1, ..., n}` and the environment semigroup
//! `B_{I,J} = T_I^(l) x T_J^(r)`.
//!
//! Points are 1-based throughout. A left transformation is written to the
//! left of its argument and composes right-to-left; a right transformation
//! is written to the right and composes left-to-right.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// A total map on the points `1..=degree`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Transformation {
    images: Vec<u32>,
}

impl Transformation {
    pub fn new(images: Vec<u32>) -> Result<Self> {
        if images.is_empty() {
            return Err(invalid("transformation must have positive degree"));
        }
        let n = images.len() as u32;
        if let Some((x, &y)) = images.iter().enumerate().find(|(_, &y)| y == 0 || y > n) {
            return Err(invalid(format!(
                "image of point {} is {y}, outside 1..={n}",
                x + 1
            )));
        }
        Ok(Self { images })
    }

    pub fn identity(degree: usize) -> Self {
        Self {
            images: (1..=degree as u32).collect(),
        }
    }

    pub fn constant(degree: usize, value: u32) -> Result<Self> {
        if value == 0 || value as usize > degree {
            return Err(invalid(format!("constant {value} outside 1..={degree}")));
        }
        Ok(Self {
            images: vec![value; degree],
        })
    }

    /// Builds `x -> f(x)` for `x = 1..=degree`. `f` must stay in range.
    pub fn from_fn(degree: usize, f: impl FnMut(u32) -> u32) -> Result<Self> {
        Self::new((1..=degree as u32).map(f).collect())
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    /// Image of the 1-based point `x`.
    pub fn apply(&self, x: u32) -> u32 {
        self.images[x as usize - 1]
    }

    /// The value of a constant map, if this is one.
    pub fn constant_value(&self) -> Option<u32> {
        let first = self.images[0];
        self.images.iter().all(|&y| y == first).then_some(first)
    }

    pub fn fixed_points(&self) -> impl Iterator<Item = u32> + '_ {
        self.images
            .iter()
            .enumerate()
            .filter(|(x, &y)| *x as u32 + 1 == y)
            .map(|(_, &y)| y)
    }

    pub fn preimage(&self, y: u32) -> impl Iterator<Item = u32> + '_ {
        self.images
            .iter()
            .enumerate()
            .filter(move |(_, &v)| v == y)
            .map(|(x, _)| x as u32 + 1)
    }

    pub fn is_idempotent(&self) -> bool {
        self.images.iter().all(|&y| self.apply(y) == y)
    }
}

impl Ord for Transformation {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.images.cmp(&other.images))
    }
}

impl PartialOrd for Transformation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl TryFrom<Vec<u32>> for Transformation {
    type Error = crate::error::Error;

    fn try_from(images: Vec<u32>) -> Result<Self> {
        Self::new(images)
    }
}

impl From<Transformation> for Vec<u32> {
    fn from(t: Transformation) -> Vec<u32> {
        t.images
    }
}

impl fmt::Debug for Transformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.images)
    }
}

fn check_degrees(f: &Transformation, g: &Transformation) -> Result<()> {
    if f.degree() != g.degree() {
        return Err(invalid(format!(
            "degree mismatch: {} vs {}",
            f.degree(),
            g.degree()
        )));
    }
    Ok(())
}

/// Right-to-left composition: `(f g)(x) = f(g(x))`.
pub fn compose_rl(f: &Transformation, g: &Transformation) -> Result<Transformation> {
    check_degrees(f, g)?;
    Ok(Transformation {
        images: g.images.iter().map(|&y| f.apply(y)).collect(),
    })
}

/// Left-to-right composition: `x (f g) = (x f) g`.
pub fn compose_lr(f: &Transformation, g: &Transformation) -> Result<Transformation> {
    check_degrees(f, g)?;
    Ok(Transformation {
        images: f.images.iter().map(|&y| g.apply(y)).collect(),
    })
}

/// Ambient index-set sizes `(|I|, |J|)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Ambient {
    pub rows: usize,
    pub cols: usize,
}

impl Ambient {
    pub fn new(rows: usize, cols: usize) -> Self {
        Self { rows, cols }
    }
}

/// An element `(beta^(l), beta^(r))` of `B_{I,J}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BElement {
    pub left: Transformation,
    pub right: Transformation,
}

impl BElement {
    pub fn new(left: Transformation, right: Transformation) -> Self {
        Self { left, right }
    }

    pub fn ambient(&self) -> Ambient {
        Ambient::new(self.left.degree(), self.right.degree())
    }

    pub fn is_idempotent(&self) -> bool {
        self.left.is_idempotent() && self.right.is_idempotent()
    }

    /// `Some((i, j))` when this is the band element `rho_{ij}`.
    pub fn rect_band_coords(&self) -> Option<(u32, u32)> {
        Some((self.left.constant_value()?, self.right.constant_value()?))
    }
}

impl fmt::Debug for BElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}, {:?})", self.left, self.right)
    }
}

pub fn b_mul(a: &BElement, b: &BElement) -> Result<BElement> {
    Ok(BElement {
        left: compose_rl(&a.left, &b.left)?,
        right: compose_lr(&a.right, &b.right)?,
    })
}

pub fn is_idempotent(a: &BElement) -> bool {
    a.is_idempotent()
}

/// The rectangular band element `rho_{ij}`.
pub fn make_rho(i: u32, j: u32, ambient: Ambient) -> Result<BElement> {
    if i == 0 || i as usize > ambient.rows || j == 0 || j as usize > ambient.cols {
        return Err(invalid(format!(
            "rho_({i},{j}) outside {}x{}",
            ambient.rows, ambient.cols
        )));
    }
    Ok(BElement {
        left: Transformation::constant(ambient.rows, i)?,
        right: Transformation::constant(ambient.cols, j)?,
    })
}

pub fn is_in_rect_band(a: &BElement) -> Option<(u32, u32)> {
    a.rect_band_coords()
}

/// All `rho_{ij}`, row-major.
pub fn rect_band(ambient: Ambient) -> Vec<BElement> {
    let mut out = Vec::with_capacity(ambient.rows * ambient.cols);
    for i in 1..=ambient.rows as u32 {
        for j in 1..=ambient.cols as u32 {
            out.push(make_rho(i, j, ambient).expect("in range"));
        }
    }
    out
}
