//! Word-size prime field arithmetic used as a fast certificate path.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::{Rat, UPoly};

const PRIMES: [u64; 3] = [2_305_843_009_213_693_951, 1_000_000_007, 998_244_353];

fn mul(a: u64, b: u64, q: u64) -> u64 {
    ((a as u128 * b as u128) % q as u128) as u64
}

fn pow(mut a: u64, mut e: u64, q: u64) -> u64 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(acc, a, q);
        }
        a = mul(a, a, q);
        e >>= 1;
    }
    acc
}

fn inv(a: u64, q: u64) -> u64 {
    pow(a, q - 2, q)
}

fn reduce(x: &Rat, q: u64) -> Option<u64> {
    let qb = BigInt::from(q);
    let den = x.denom().mod_floor(&qb).to_u64()?;
    if den == 0 {
        return None;
    }
    let num = x.numer().mod_floor(&qb).to_u64()?;
    Some(mul(num, inv(den, q), q))
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn rem(a: &[u64], b: &[u64], q: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let il = inv(b[db], q);
    while r.len() > db {
        let k = r.len() - 1 - db;
        let c = mul(*r.last().unwrap(), il, q);
        for (i, bi) in b.iter().enumerate() {
            r[k + i] = (r[k + i] + q - mul(c, *bi, q)) % q;
        }
        trim(&mut r);
    }
    r
}

/// `Some(true)` when some prime certifies that `p` is squarefree over Q
/// (the discriminant is nonzero modulo it). `None` when inconclusive.
pub(crate) fn squarefree_witness(p: &UPoly) -> Option<bool> {
    coprime_witness(p, &p.derivative())
}

/// `Some(true)` when some prime certifies `gcd(a, b) = 1` over Q: both
/// leading coefficients survive reduction and the reduced gcd is constant.
pub(crate) fn coprime_witness(a: &UPoly, b: &UPoly) -> Option<bool> {
    let reduce_all = |p: &UPoly, q: u64| -> Option<Vec<u64>> {
        let v: Option<Vec<u64>> = p.coeffs().iter().map(|c| reduce(c, q)).collect();
        v.filter(|v| v.last().is_some_and(|&c| c != 0))
    };
    for &q in &PRIMES {
        let (Some(mut x), Some(mut y)) = (reduce_all(a, q), reduce_all(b, q)) else {
            continue;
        };
        while !y.is_empty() {
            let r = rem(&x, &y, q);
            x = y;
            y = r;
        }
        if x.len() == 1 {
            return Some(true);
        }
    }
    None
}
