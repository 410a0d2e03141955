//! Abelian invariants via the Smith normal form of the exponent-sum matrix.

use super::GroupPresentation;
use crate::error::{Error, Result};

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Nonzero diagonal of the Smith normal form, as a divisibility chain.
pub fn smith_diagonal(matrix: &[Vec<i64>]) -> Result<Vec<u64>> {
    let rows = matrix.len();
    let cols = matrix.first().map_or(0, Vec::len);
    let mut a: Vec<Vec<i128>> = matrix
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut diag: Vec<i128> = Vec::new();

    for t in 0..rows.min(cols) {
        // smallest nonzero entry of the remaining block as pivot
        let Some((pi, pj)) = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| a[i][j] != 0)
            .min_by_key(|&(i, j)| a[i][j].abs())
        else {
            break;
        };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let p = a[t][t];
            for i in t + 1..rows {
                let q = a[i][t] / p;
                if q != 0 {
                    for j in t..cols {
                        let v = q.checked_mul(a[t][j]).ok_or(Error::SmithOverflow)?;
                        a[i][j] = a[i][j].checked_sub(v).ok_or(Error::SmithOverflow)?;
                    }
                }
            }
            for j in t + 1..cols {
                let q = a[t][j] / p;
                if q != 0 {
                    for row in a.iter_mut().skip(t) {
                        let v = q.checked_mul(row[t]).ok_or(Error::SmithOverflow)?;
                        row[j] = row[j].checked_sub(v).ok_or(Error::SmithOverflow)?;
                    }
                }
            }
            // remainders smaller than the pivot: move the least one in and repeat
            let next = (t + 1..rows)
                .map(|i| (i, t))
                .chain((t + 1..cols).map(|j| (t, j)))
                .filter(|&(i, j)| a[i][j] != 0)
                .min_by_key(|&(i, j)| a[i][j].abs());
            match next {
                None => break,
                Some((i, j)) if j == t => a.swap(t, i),
                Some((_, j)) => {
                    for row in a.iter_mut() {
                        row.swap(t, j);
                    }
                }
            }
        }
        diag.push(a[t][t].abs());
    }

    // enforce d_1 | d_2 | ... via (gcd, lcm) replacement
    let k = diag.len();
    for i in 0..k {
        for j in i + 1..k {
            let (x, y) = (diag[i], diag[j]);
            if y % x != 0 {
                let g = gcd(x, y);
                diag[i] = g;
                diag[j] = (x / g).checked_mul(y).ok_or(Error::SmithOverflow)?;
            }
        }
    }
    diag.iter()
        .map(|&d| u64::try_from(d).map_err(|_| Error::SmithOverflow))
        .collect()
}

/// Invariant factors of the abelianization, nontrivial torsion first and a
/// trailing `0` per free factor. The trivial group gives an empty list.
pub fn abelian_invariants(p: &GroupPresentation) -> Result<Vec<u64>> {
    let n = p.generators.len();
    let matrix: Vec<Vec<i64>> = p
        .relators()
        .iter()
        .map(|r| {
            let mut row = vec![0i64; n];
            for l in r.letters() {
                row[l.gen] += if l.inverse { -1 } else { 1 };
            }
            row
        })
        .filter(|row| row.iter().any(|&x| x != 0))
        .collect();
    let diag = if matrix.is_empty() {
        Vec::new()
    } else {
        smith_diagonal(&matrix)?
    };
    let rank = diag.len();
    let mut out: Vec<u64> = diag.into_iter().filter(|&d| d != 1).collect();
    out.extend(std::iter::repeat_n(0, n - rank));
    Ok(out)
}
