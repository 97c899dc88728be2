use std::collections::BTreeMap;

use num_traits::{ToPrimitive, Zero};

use super::{positive_primitive, sign_at_infinity};
use crate::error::{Error, Result};
use crate::exactring::{int, rat, Rat, UPoly};
use crate::linalg;

/// Signed remainder sequence `a, b, -rem(a, b), ...`, each term rescaled by
/// a positive constant (which does not change any sign).
fn signed_remainders(a: &UPoly, b: &UPoly) -> Vec<UPoly> {
    let mut seq = vec![positive_primitive(a)];
    let mut cur = positive_primitive(b);
    while !cur.is_zero() {
        let prev = seq.last().expect("nonempty");
        let r = prev.rem_by(&cur);
        seq.push(cur);
        cur = positive_primitive(&-&r);
    }
    seq
}

fn variations(signs: impl Iterator<Item = i8>) -> i64 {
    let mut last = 0;
    let mut count = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// `sum sign(q(x))` over the distinct real roots `x` of `p`.
pub fn tarski_query(p: &UPoly, q: &UPoly) -> Result<i64> {
    if p.is_zero() {
        return Err(Error::InvalidInput("Tarski query against the zero polynomial".into()));
    }
    Ok(taq(&p.squarefree_part(), q))
}

/// Tarski query against a squarefree `p`.
fn taq(p: &UPoly, q: &UPoly) -> i64 {
    if p.is_constant() {
        return 0;
    }
    let q = q.rem_by(p);
    if q.is_zero() {
        return 0;
    }
    let seq = signed_remainders(p, &(&p.derivative() * &q));
    let minus = variations(seq.iter().map(|s| sign_at_infinity(s, false)));
    let plus = variations(seq.iter().map(|s| sign_at_infinity(s, true)));
    minus - plus
}

/// Realizable sign conditions of a list of polynomials over the real roots
/// of `p`, with the number of roots realizing each.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignConditionTable {
    pub rows: Vec<(Vec<i8>, usize)>,
}

impl SignConditionTable {
    pub fn total(&self) -> usize {
        self.rows.iter().map(|(_, c)| c).sum()
    }

    pub fn count_of(&self, signs: &[i8]) -> usize {
        self.rows
            .iter()
            .find(|(s, _)| s == signs)
            .map_or(0, |(_, c)| *c)
    }
}

/// Value of `[1, s, s^2]` at sign `s`: rows are exponents, columns signs.
fn sign_power(e: u8, s: i8) -> Rat {
    match (e, s) {
        (0, _) => int(1),
        (1, s) => int(s as i64),
        (_, s) => int((s * s) as i64),
    }
}

/// Indices of rows of `m` that form a basis of its row space.
fn independent_rows(m: &[Vec<Rat>]) -> Vec<usize> {
    let mut basis: Vec<(usize, Vec<Rat>)> = Vec::new();
    let mut chosen = Vec::new();
    for (i, row) in m.iter().enumerate() {
        let mut r = row.clone();
        for (piv, b) in &basis {
            if !r[*piv].is_zero() {
                let f = &r[*piv] / &b[*piv];
                for (x, y) in r.iter_mut().zip(b) {
                    *x -= &f * y;
                }
            }
        }
        if let Some(piv) = r.iter().position(|x| !x.is_zero()) {
            basis.push((piv, r));
            chosen.push(i);
        }
    }
    chosen
}

/// Incremental sign determination: after each new polynomial only the
/// realizable conditions are kept, together with a square invertible set of
/// products `prod q_i^{e_i}` whose Tarski queries determine their counts.
pub fn sign_determination(p: &UPoly, qs: &[UPoly]) -> Result<SignConditionTable> {
    if p.is_zero() {
        return Err(Error::InvalidInput("sign determination over the zero polynomial".into()));
    }
    let p = p.squarefree_part();
    let roots = taq(&p, &UPoly::one());
    if roots == 0 {
        return Ok(SignConditionTable { rows: Vec::new() });
    }
    let mut conds: Vec<Vec<i8>> = vec![Vec::new()];
    let mut counts: Vec<usize> = vec![roots as usize];
    // products as exponent vectors, with their reduced polynomial and query value
    let mut prods: Vec<(Vec<u8>, UPoly, i64)> = vec![(Vec::new(), UPoly::one(), roots)];
    for q in qs {
        let q = q.rem_by(&p);
        let q2 = q.mul_mod(&q, &p);
        let mut cand_prods = Vec::with_capacity(3 * prods.len());
        for (e, poly, known) in &prods {
            for k in 0u8..3 {
                let mut ek = e.clone();
                ek.push(k);
                let (poly_k, taq_k) = match k {
                    0 => (poly.clone(), *known),
                    _ => {
                        let pk = poly.mul_mod(if k == 1 { &q } else { &q2 }, &p);
                        let t = taq(&p, &pk);
                        (pk, t)
                    }
                };
                cand_prods.push((ek, poly_k, taq_k));
            }
        }
        let mut cand_conds = Vec::with_capacity(3 * conds.len());
        for c in &conds {
            for s in [0i8, 1, -1] {
                let mut cs = c.clone();
                cs.push(s);
                cand_conds.push(cs);
            }
        }
        let entry = |e: &[u8], c: &[i8]| -> Rat {
            e.iter().zip(c).fold(int(1), |acc, (&ei, &ci)| acc * sign_power(ei, ci))
        };
        // the new matrix is (old matrix) x M1 with M1 = [[1,1,1],[0,1,-1],[0,1,1]]
        // (rows q^0, q^1, q^2; columns signs 0, +, -), so solve blockwise
        let old: Vec<Vec<Rat>> = prods
            .iter()
            .map(|(e, _, _)| conds.iter().map(|c| entry(e, c)).collect())
            .collect();
        let mut w = Vec::with_capacity(3);
        for k in 0..3 {
            let rhs: Vec<Rat> = cand_prods.iter().skip(k).step_by(3).map(|(_, _, t)| int(*t)).collect();
            w.push(linalg::solve(&old, &rhs)?);
        }
        let half = rat(1, 2);
        let sol: Vec<Rat> = (0..conds.len())
            .flat_map(|c| {
                let (w0, w1, w2) = (&w[0][c], &w[1][c], &w[2][c]);
                [w0 - w2, (w1 + w2) * &half, (w2 - w1) * &half]
            })
            .collect();
        let mut next_conds = Vec::new();
        let mut next_counts = Vec::new();
        for (c, x) in cand_conds.into_iter().zip(sol) {
            if x.is_zero() {
                continue;
            }
            let n = x
                .to_integer()
                .to_usize()
                .filter(|_| x.is_integer())
                .ok_or_else(|| Error::Invariant("sign counts are not natural numbers".into()))?;
            next_conds.push(c);
            next_counts.push(n);
        }
        let sub: Vec<Vec<Rat>> = cand_prods
            .iter()
            .map(|(e, _, _)| next_conds.iter().map(|c| entry(e, c)).collect())
            .collect();
        let keep = independent_rows(&sub);
        if keep.len() != next_conds.len() {
            return Err(Error::Invariant("sign matrix lost rank".into()));
        }
        let mut cand_prods: Vec<Option<_>> = cand_prods.into_iter().map(Some).collect();
        prods = keep.iter().map(|&i| cand_prods[i].take().expect("distinct")).collect();
        conds = next_conds;
        counts = next_counts;
    }
    let mut rows: BTreeMap<Vec<i8>, usize> = BTreeMap::new();
    for (c, n) in conds.into_iter().zip(counts) {
        rows.insert(c, n);
    }
    Ok(SignConditionTable {
        rows: rows.into_iter().collect(),
    })
}
