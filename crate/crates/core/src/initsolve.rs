//! Resolution of the start system at `t = 0`.
//!
//! The start system splits into blocks indexed by `B` (coordinates sitting
//! at a critical point of `T_d`) and a sign map `e` on `B`. Each block is a
//! system in separated variables: every coordinate satisfies its own
//! univariate equation and the multipliers are constant.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::deformation::{cauchy_block, Candidate, DeformationData};
use crate::error::{Error, Result};
use crate::exactring::{charpoly_from_power_sums, int, power_sums, Rat, UPoly};
use crate::geomres::{GeomRes, Kronecker};
use crate::linalg;
use crate::problem::Problem;
use crate::ring::{Dual, Ring};

/// Solves `a_b y = rhs` for `y = T_d(x) + 1` and returns `c = y - 1`.
/// Values `+-1` would put a coordinate on a critical value of `T_d`.
pub fn solve_block_linear(a_b: &[Vec<Rat>], rhs: &[Rat]) -> Result<Vec<Rat>> {
    let y = linalg::solve(a_b, rhs)
        .map_err(|_| Error::Invariant("Cauchy block is singular".into()))?;
    let c: Vec<Rat> = y.into_iter().map(|yi| yi - Rat::one()).collect();
    if c.iter().any(|ci| ci.is_one() || *ci == -Rat::one()) {
        return Err(Error::Invariant("block value lands on a critical value".into()));
    }
    Ok(c)
}

/// Multipliers of a block: `sum_k a_{i_k j} lambda_k = a_{0j}` for `j` outside
/// `B`, with `lambda_k` negated where `sigma_k = -`.
pub fn lambda_for_block(dd: &DeformationData, complement: &[usize], cand: &Candidate) -> Result<Vec<Rat>> {
    if complement.len() != cand.s() {
        return Err(Error::InvalidInput("block size does not match candidate".into()));
    }
    if complement.is_empty() {
        return Ok(Vec::new());
    }
    // rows indexed by j in the complement, columns by k in S
    let mat: Vec<Vec<Rat>> = complement
        .iter()
        .map(|&j| cand.set.iter().map(|&i| dd.a[i + 1][j + 1].clone()).collect())
        .collect();
    let rhs: Vec<Rat> = complement.iter().map(|&j| dd.a[0][j + 1].clone()).collect();
    let lam = linalg::solve(&mat, &rhs)
        .map_err(|_| Error::Invariant("multiplier system is singular".into()))?;
    Ok(lam
        .into_iter()
        .zip(&cand.sigma)
        .map(|(l, s)| l * s.as_rat())
        .collect())
}

/// Resolution of a product set `Z(h_1) x .. x Z(h_n) x {consts}` for the
/// form `sum alpha_j x_j`. Each `h_j` must be squarefree.
pub fn separated_resolution(h: &[UPoly], consts: &[Rat], alpha: &[Rat]) -> Result<GeomRes> {
    separated_kronecker(h, consts, alpha)?.to_geomres()
}

/// Same point set in Kronecker form.
///
/// Power sums of the form values are combined coordinate by coordinate
/// with `alpha` perturbed to `alpha + eps`. If `P(u, y)` vanishes at
/// `u = sum y_j x_j`, then `P'(u) x_j = -dP/dy_j`, so the first-order part
/// of the minimal polynomial is `-w_j` directly.
pub fn separated_kronecker(h: &[UPoly], consts: &[Rat], alpha: &[Rat]) -> Result<Kronecker> {
    let n = h.len();
    let coords = n + consts.len();
    if h.iter().any(|hj| hj.deg0() == 0) {
        return Ok(Kronecker::empty(coords, alpha));
    }
    let total: usize = h.iter().map(UPoly::deg0).product();
    let like = Dual::lift(Rat::zero(), n);
    let binom = binomial_rows(total);

    // power sums of the empty sum: one point at 0
    let mut acc: Vec<Dual<Rat>> = (0..=total)
        .map(|r| if r == 0 { like.one_like() } else { like.zero_like() })
        .collect();
    for (j, hj) in h.iter().enumerate() {
        let s = power_sums(&hj.monic(), total);
        let a = &alpha[j];
        // (alpha_j + eps_j)^r s_r
        let mut apow = Rat::one();
        let mut prev = Rat::zero();
        let coord: Vec<Dual<Rat>> = (0..=total)
            .map(|r| {
                let mut eps = vec![Rat::zero(); n];
                eps[j] = &prev * int(r as i64) * &s[r];
                let d = Dual::new(&apow * &s[r], eps);
                prev = apow.clone();
                apow = &apow * a;
                d
            })
            .collect();
        acc = (0..=total)
            .map(|r| {
                (0..=r).fold(like.zero_like(), |sum, i| {
                    sum.plus(&acc[i].times(&coord[r - i]).scaled(&binom[r][i]))
                })
            })
            .collect();
    }
    let cp = charpoly_from_power_sums(&acc, total);
    let p = UPoly::new(cp.iter().map(|c| c.re.clone()).collect());
    if !p.is_squarefree() {
        return Err(Error::Separation("form does not separate block points".into()));
    }
    let dp = p.derivative();
    let mut w: Vec<UPoly> = (0..n)
        .map(|j| UPoly::new(cp.iter().map(|c| -c.eps[j].clone()).collect()))
        .collect();
    w.extend(consts.iter().map(|c| dp.scale(c)));
    Ok(Kronecker {
        p,
        w,
        alpha: alpha.to_vec(),
        x_count: n,
    })
}

fn binomial_rows(n: usize) -> Vec<Vec<Rat>> {
    let mut rows: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]];
    for r in 1..=n {
        let prev = &rows[r - 1];
        let mut row = vec![BigInt::one(); r + 1];
        for i in 1..r {
            row[i] = &prev[i - 1] + &prev[i];
        }
        rows.push(row);
    }
    rows.into_iter()
        .map(|row| row.into_iter().map(Rat::from_integer).collect())
        .collect()
}

/// Resolution of the block `(B, e)`: coordinates in `block` are critical
/// points of `T_d` with value `e_j`; the others solve `T_d(x_j) = c_j`.
pub fn geomres_block(
    cheb: &UPoly,
    block: &[usize],
    e: &[i8],
    c: &[Rat],
    lambda: &[Rat],
    alpha: &[Rat],
) -> Result<GeomRes> {
    block_kronecker(cheb, block, e, c, lambda, alpha)?.to_geomres()
}

fn block_kronecker(
    cheb: &UPoly,
    block: &[usize],
    e: &[i8],
    c: &[Rat],
    lambda: &[Rat],
    alpha: &[Rat],
) -> Result<Kronecker> {
    let n = alpha.len();
    let dcheb = cheb.derivative();
    let mut ci = c.iter();
    let h: Vec<UPoly> = (0..n)
        .map(|j| match block.iter().position(|&b| b == j) {
            Some(k) => UPoly::gcd(&dcheb, &(cheb - &UPoly::constant(int(e[k] as i64)))),
            None => {
                let cj = ci.next().expect("one value per free coordinate");
                Ok((cheb - &UPoly::constant(cj.clone())).monic())
            }
        })
        .collect::<Result<_>>()?;
    separated_kronecker(&h, lambda, alpha)
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize == k {
            out.push((0..n).filter(|j| mask >> j & 1 == 1).collect::<Vec<_>>());
        }
    }
    out.sort();
    out
}

/// Full start-system resolution over `(x, lambda)`; degree must be `D_s`.
pub fn initial_geomres(p: &Problem, dd: &DeformationData, cand: &Candidate, alpha: &[Rat]) -> Result<GeomRes> {
    let n = p.n;
    let s = cand.s();
    let mut acc = Kronecker::empty(n + s, alpha);
    let rows: Vec<usize> = cand.set.iter().map(|&i| i + 1).collect();
    for block in subsets(n, n - s) {
        let complement: Vec<usize> = (0..n).filter(|j| !block.contains(j)).collect();
        let lambda = lambda_for_block(dd, &complement, cand)?;
        let a_b = cauchy_block(dd, &rows, &complement);
        for mask in 0u32..(1 << block.len()) {
            let e: Vec<i8> = (0..block.len())
                .map(|k| if mask >> (block.len() - 1 - k) & 1 == 1 { 1 } else { -1 })
                .collect();
            let rhs: Vec<Rat> = rows
                .iter()
                .map(|&i| {
                    let mut r = -dd.a[i][0].clone();
                    for (k, &j) in block.iter().enumerate() {
                        r -= &dd.a[i][j + 1] * int(e[k] as i64 + 1);
                    }
                    r
                })
                .collect();
            let c = solve_block_linear(&a_b, &rhs)?;
            let piece = block_kronecker(&dd.cheb, &block, &e, &c, &lambda, alpha)?;
            acc = Kronecker::union_disjoint(&acc, &piece)?;
        }
    }
    if acc.degree() != cand.d_s {
        return Err(Error::Separation(format!(
            "start system has {} points, expected {}",
            acc.degree(),
            cand.d_s
        )));
    }
    let res = acc.to_geomres()?;
    res.validate()?;
    Ok(res)
}
