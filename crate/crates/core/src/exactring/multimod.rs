//! Multimodular solving of `a x == r (mod m)` in `Q[u]/(m)`.
//!
//! The answer is computed modulo many 62-bit primes, combined by Chinese
//! remaindering and lifted to rationals by rational reconstruction. A
//! candidate is accepted only after an exact divisibility check over `Z`.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{bigint, Rat, UPoly};

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

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut r = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        r += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = mul(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Descending primes below `2^62`.
struct Primes(u64);

impl Iterator for Primes {
    type Item = u64;
    fn next(&mut self) -> Option<u64> {
        loop {
            self.0 -= 2;
            if is_prime(self.0) {
                return Some(self.0);
            }
        }
    }
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn rem(a: &[u64], b: &[u64], q: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let il = inv(b[db], q);
    while r.len() > db {
        let k = r.len() - 1 - db;
        let c = mul(*r.last().expect("nonempty"), il, q);
        for (i, bi) in b.iter().enumerate() {
            r[k + i] = (r[k + i] + q - mul(c, *bi, q)) % q;
        }
        trim(&mut r);
    }
    r
}

fn divrem(a: &[u64], b: &[u64], q: u64) -> (Vec<u64>, Vec<u64>) {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut quot = vec![0; r.len() - db];
    let il = inv(b[db], q);
    while r.len() > db {
        let k = r.len() - 1 - db;
        let c = mul(*r.last().expect("nonempty"), il, q);
        quot[k] = c;
        for (i, bi) in b.iter().enumerate() {
            r[k + i] = (r[k + i] + q - mul(c, *bi, q)) % q;
        }
        trim(&mut r);
    }
    (quot, r)
}

fn poly_mul(a: &[u64], b: &[u64], q: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        for (j, bj) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mul(*ai, *bj, q)) % q;
        }
    }
    out
}

fn poly_sub(a: &[u64], b: &[u64], q: u64) -> Vec<u64> {
    let mut out = vec![0; a.len().max(b.len())];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *o = (x + q - y) % q;
    }
    trim(&mut out);
    out
}

fn inverse_q(a: &[u64], m: &[u64], q: u64) -> Option<Vec<u64>> {
    let (mut r0, mut r1) = (m.to_vec(), rem(a, m, q));
    let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
    while r1.len() > 1 {
        let (qt, r) = divrem(&r0, &r1, q);
        let t = poly_sub(&t0, &poly_mul(&qt, &t1, q), q);
        r0 = std::mem::replace(&mut r1, r);
        t0 = std::mem::replace(&mut t1, t);
    }
    if r1.is_empty() {
        return None;
    }
    let c = inv(r1[0], q);
    let mut t: Vec<u64> = t1.iter().map(|x| mul(*x, c, q)).collect();
    trim(&mut t);
    Some(rem(&t, m, q))
}

fn reduce_rat(c: &Rat, q: &BigInt, qs: u64) -> Option<u64> {
    let den = c.denom().mod_floor(q).to_u64().expect("small");
    if den == 0 {
        return None;
    }
    let num = c.numer().mod_floor(q).to_u64().expect("small");
    Some(mul(num, inv(den, qs), qs))
}

fn reduce(p: &UPoly, qs: u64) -> Option<Vec<u64>> {
    let q = BigInt::from(qs);
    p.coeffs().iter().map(|c| reduce_rat(c, &q, qs)).collect()
}

/// Incremental CRT state for many values sharing one modulus.
struct Crt {
    modulus: BigUint,
    values: Vec<BigUint>,
}

impl Crt {
    fn push(&mut self, residues: &[u64], q: u64) {
        let mq = (&self.modulus % q).to_u64().expect("small");
        let minv = inv(mq, q);
        for (x, &r) in self.values.iter_mut().zip(residues) {
            let xq = (&*x % q).to_u64().expect("small");
            let k = mul((r + q - xq) % q, minv, q);
            if k != 0 {
                *x += &self.modulus * k;
            }
        }
        self.modulus *= q;
    }
}

/// `(a, b)` with `a == b x (mod m)`, `b > 0` and both at most `bound`.
fn ratrecon(x: &BigInt, m: &BigInt, bound: &BigInt) -> Option<(BigInt, BigInt)> {
    let (mut r0, mut r1) = (m.clone(), x.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while &r1 > bound {
        let qt = &r0 / &r1;
        let r = &r0 - &qt * &r1;
        r0 = std::mem::replace(&mut r1, r);
        let t = &t0 - &qt * &t1;
        t0 = std::mem::replace(&mut t1, t);
    }
    if t1.is_zero() || &t1.abs() > bound {
        return None;
    }
    Some(if t1.is_negative() { (-r1, -t1) } else { (r1, t1) })
}

/// Reconstructs every value as `nums[i] / den` with one common
/// denominator, built as a running product so later values are usually
/// integers once multiplied by it.
fn reconstruct(crt: &Crt) -> Option<(BigInt, Vec<BigInt>)> {
    let modulus = BigInt::from(crt.modulus.clone());
    let half = &modulus >> 1usize;
    let bound: BigInt = half.sqrt();
    let mut den = BigInt::one();
    // numerators paired with the denominator in force when they were found
    let mut parts: Vec<(BigInt, usize)> = Vec::with_capacity(crt.values.len());
    let mut dens = vec![BigInt::one()];
    for x in &crt.values {
        let mut y = (BigInt::from(x.clone()) * &den).mod_floor(&modulus);
        if y > half {
            y -= &modulus;
        }
        if y.abs() > bound {
            let (num, b) = ratrecon(&y, &modulus, &bound)?;
            den *= &b;
            if den > bound {
                // too few primes yet; values this large cannot be trusted
                return None;
            }
            dens.push(den.clone());
            y = num;
        }
        parts.push((y, dens.len() - 1));
    }
    let nums = parts
        .into_iter()
        .map(|(y, k)| if k + 1 == dens.len() { y } else { y * (&den / &dens[k]) })
        .collect();
    Some((den, nums))
}

fn to_ints(p: &UPoly) -> (BigInt, Vec<BigInt>) {
    let den = bigint::common_denominator(p.coeffs());
    let ints = p.coeffs().iter().map(|c| c.numer() * (&den / c.denom())).collect();
    (den, ints)
}

fn mul_big(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            out[i + j] += ai * bj;
        }
    }
    out
}

/// Whether the integer polynomial `m` divides `prod` over `Q`. For
/// primitive `m` this is divisibility over `Z`, so every step is exact.
fn divisible(mut prod: Vec<BigInt>, m: &[BigInt]) -> bool {
    let dm = m.len() - 1;
    let lc = &m[dm];
    for k in (dm..prod.len()).rev() {
        if prod[k].is_zero() {
            continue;
        }
        let (qk, rk) = prod[k].div_rem(lc);
        if !rk.is_zero() {
            return false;
        }
        for (i, mi) in m.iter().enumerate() {
            prod[k - dm + i] -= &qk * mi;
        }
    }
    prod.iter().take(dm).all(Zero::is_zero)
}

/// Checks `a x_j == r_j (mod m)` exactly, where `x_j = xs[j] / den`.
fn certify(a: &UPoly, m: &UPoly, rhs: &[UPoly], den: &BigInt, xs: &[&[BigInt]]) -> bool {
    let (_, pm) = m.primitive_split();
    let (_, mi) = to_ints(&pm);
    let (da, ai) = to_ints(a);
    let k = &da * den;
    rhs.iter().zip(xs).all(|(r, x)| {
        let (dr, ri) = to_ints(r);
        // dr a x - da den r, cleared of denominators
        let mut prod = mul_big(&ai, x);
        for c in prod.iter_mut() {
            *c *= &dr;
        }
        if prod.len() < ri.len() {
            prod.resize(ri.len(), BigInt::zero());
        }
        for (c, rc) in prod.iter_mut().zip(&ri) {
            *c -= rc * &k;
        }
        divisible(prod, &mi)
    })
}

/// `r_j a^{-1} mod m` for every `j`, or `None` when the fast path gives up
/// (the caller falls back to exact Euclid, which also detects a shared factor).
pub(crate) fn divide_mod(rhs: &[UPoly], a: &UPoly, m: &UPoly) -> Option<Vec<UPoly>> {
    let dm = m.deg0();
    if dm == 0 {
        return None;
    }
    let mut crt = Crt {
        modulus: BigUint::one(),
        values: vec![BigUint::zero(); dm * rhs.len()],
    };
    let mut misses = 0;
    let mut used = 0usize;
    let mut next_try = 2usize;
    for q in Primes((1 << 62) + 1) {
        let (Some(mq), Some(aq)) = (reduce(m, q), reduce(a, q)) else {
            continue;
        };
        if mq[dm] == 0 {
            continue;
        }
        let Some(rq) = rhs.iter().map(|r| reduce(r, q)).collect::<Option<Vec<_>>>() else {
            continue;
        };
        let Some(ia) = inverse_q(&aq, &mq, q) else {
            misses += 1;
            if misses > 3 {
                return None;
            }
            continue;
        };
        let mut residues = Vec::with_capacity(crt.values.len());
        for r in &rq {
            let x = rem(&poly_mul(&rem(r, &mq, q), &ia, q), &mq, q);
            residues.extend((0..dm).map(|i| x.get(i).copied().unwrap_or(0)));
        }
        crt.push(&residues, q);
        used += 1;
        if used == next_try {
            next_try += next_try / 2;
            if let Some((den, nums)) = reconstruct(&crt) {
                let xs: Vec<&[BigInt]> = nums.chunks(dm).collect();
                if certify(a, m, rhs, &den, &xs) {
                    let out = xs
                        .iter()
                        .map(|c| UPoly::new(c.iter().map(|v| bigint::ratio(v.clone(), den.clone())).collect()))
                        .collect();
                    return Some(out);
                }
            }
        }
        if used > 1 << 16 {
            return None;
        }
    }
    None
}
