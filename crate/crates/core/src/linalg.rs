//! Small dense linear algebra: exact Gaussian elimination over the
//! rationals and division-free characteristic polynomials over any ring.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactring::Rat;
use crate::ring::Ring;

pub type Matrix<R> = Vec<Vec<R>>;

/// Solves the square system `a x = b` exactly.
pub fn solve(a: &[Vec<Rat>], b: &[Rat]) -> Result<Vec<Rat>> {
    let n = a.len();
    if b.len() != n || a.iter().any(|r| r.len() != n) {
        return Err(Error::InvalidInput("system must be square".into()));
    }
    let mut m: Vec<Vec<Rat>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n)
            .find(|&r| !m[r][col].is_zero())
            .ok_or_else(|| Error::Singular("singular linear system".into()))?;
        m.swap(col, piv);
        let inv = Rat::one() / &m[col][col];
        for k in col..=n {
            m[col][k] = &m[col][k] * &inv;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for k in col..=n {
                    let d = &f * &m[col][k];
                    m[r][k] -= d;
                }
            }
        }
    }
    Ok(m.into_iter().map(|mut r| r.pop().expect("augmented")).collect())
}

/// Rank of a rational matrix.
pub fn rank(a: &[Vec<Rat>]) -> usize {
    let mut m: Vec<Vec<Rat>> = a.to_vec();
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, piv);
        for i in r + 1..rows {
            if !m[i][c].is_zero() {
                let f = &m[i][c] / &m[r][c];
                for k in c..cols {
                    let d = &f * &m[r][k];
                    m[i][k] -= d;
                }
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

fn mat_mul<R: Ring>(a: &Matrix<R>, b: &Matrix<R>, like: &R) -> Matrix<R> {
    let n = a.len();
    let p = b.first().map_or(0, Vec::len);
    (0..n)
        .map(|i| {
            (0..p)
                .map(|j| {
                    a[i].iter()
                        .zip(b)
                        .fold(like.zero_like(), |acc, (x, brow)| acc.plus(&x.times(&brow[j])))
                })
                .collect()
        })
        .collect()
}

/// Coefficients `[1, c_1, .., c_N]` of `det(z I - a) = z^N + c_1 z^(N-1) + .. + c_N`
/// by Berkowitz's algorithm (no divisions).
pub fn charpoly<R: Ring>(a: &Matrix<R>, like: &R) -> Vec<R> {
    let n = a.len();
    let mut v = vec![like.one_like()];
    for r in 0..n {
        // a_r = [[A_{r}, S], [R, a_rr]] with A_r the leading r x r block
        let arr = &a[r][r];
        let row: Vec<R> = a[r][..r].to_vec();
        let mut col: Vec<R> = (0..r).map(|i| a[i][r].clone()).collect();
        let mut toeplitz = vec![like.one_like(), arr.negated()];
        for _ in 0..r {
            let rs = row
                .iter()
                .zip(&col)
                .fold(like.zero_like(), |acc, (x, y)| acc.plus(&x.times(y)));
            toeplitz.push(rs.negated());
            col = (0..r)
                .map(|i| {
                    (0..r).fold(like.zero_like(), |acc, k| acc.plus(&a[i][k].times(&col[k])))
                })
                .collect();
        }
        // lower-triangular Toeplitz (r+2) x (r+1) times v
        let next: Vec<R> = (0..r + 2)
            .map(|i| {
                (0..=r.min(i)).fold(like.zero_like(), |acc, k| {
                    if i - k < toeplitz.len() && k < v.len() {
                        acc.plus(&toeplitz[i - k].times(&v[k]))
                    } else {
                        acc
                    }
                })
            })
            .collect();
        v = next;
    }
    v
}

pub fn det<R: Ring>(a: &Matrix<R>, like: &R) -> R {
    let n = a.len();
    let c = charpoly(a, like);
    let last = c[n].clone();
    if n.is_multiple_of(2) {
        last
    } else {
        last.negated()
    }
}

/// `(det a, adj a)` via Cayley-Hamilton on the Berkowitz coefficients.
pub fn det_adjugate<R: Ring>(a: &Matrix<R>, like: &R) -> (R, Matrix<R>) {
    let n = a.len();
    let c = charpoly(a, like);
    let ident = |x: &R| -> Matrix<R> {
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { x.clone() } else { like.zero_like() })
                    .collect()
            })
            .collect()
    };
    // Horner: B = A^{N-1} + c_1 A^{N-2} + .. + c_{N-1} I
    let mut b = ident(&like.one_like());
    for ck in c.iter().take(n).skip(1) {
        b = mat_mul(a, &b, like);
        for (i, row) in b.iter_mut().enumerate() {
            row[i] = row[i].plus(ck);
        }
    }
    let det = if n.is_multiple_of(2) { c[n].clone() } else { c[n].negated() };
    // adj = (-1)^{N+1} B
    if n.is_multiple_of(2) {
        b = b
            .into_iter()
            .map(|row| row.into_iter().map(|x| x.negated()).collect())
            .collect();
    }
    (det, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactring::{int, rat};
    use proptest::prelude::*;

    /// Cofactor expansion, independent of Berkowitz.
    fn det_expand(a: &[Vec<Rat>]) -> Rat {
        let n = a.len();
        if n == 0 {
            return int(1);
        }
        let mut acc = int(0);
        for j in 0..n {
            let minor: Vec<Vec<Rat>> = a[1..]
                .iter()
                .map(|r| r.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, x)| x.clone()).collect())
                .collect();
            let term = &a[0][j] * det_expand(&minor);
            if j % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    }

    #[test]
    fn small_cases() {
        let a = vec![vec![int(2), int(1)], vec![int(1), int(3)]];
        assert_eq!(det(&a, &int(0)), int(5));
        assert_eq!(charpoly(&a, &int(0)), vec![int(1), int(-5), int(5)]);
        assert_eq!(solve(&a, &[int(3), int(4)]).unwrap(), vec![int(1), int(1)]);
        assert!(solve(&[vec![int(1), int(2)], vec![int(2), int(4)]], &[int(0), int(0)]).is_err());
        assert_eq!(rank(&[vec![int(1), int(2)], vec![int(2), int(4)]]), 1);
        let empty: Matrix<Rat> = vec![];
        assert_eq!(det(&empty, &int(0)), int(1));
    }

    proptest! {
        #[test]
        fn berkowitz_matches_expansion(n in 1usize..=5, entries in prop::collection::vec((-5i64..=5, 1i64..=3), 25)) {
            let a: Vec<Vec<Rat>> = (0..n).map(|i| (0..n).map(|j| rat(entries[i * 5 + j].0, entries[i * 5 + j].1)).collect()).collect();
            prop_assert_eq!(det(&a, &int(0)), det_expand(&a));
            let (d, adj) = det_adjugate(&a, &int(0));
            let prod = mat_mul(&a, &adj, &int(0));
            for i in 0..n {
                for j in 0..n {
                    prop_assert_eq!(&prod[i][j], &if i == j { d.clone() } else { int(0) });
                }
            }
            if !d.is_zero() {
                let b: Vec<Rat> = (0..n).map(|i| int(i as i64 - 1)).collect();
                let x = solve(&a, &b).unwrap();
                for i in 0..n {
                    let lhs = (0..n).fold(int(0), |acc, k| acc + &a[i][k] * &x[k]);
                    prop_assert_eq!(&lhs, &b[i]);
                }
            }
        }
    }
}
