use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{bigint, int, modular, multimod, rat_to_string, Rat};
use crate::error::{Error, Result};
use crate::ring::Ring;

/// Moduli of at least this degree use the multimodular inverse.
const MULTIMODULAR_THRESHOLD: usize = 12;

/// Dense univariate polynomial over the rationals, lowest degree first.
///
/// The coefficient vector never ends in a zero, so the zero polynomial is
/// the empty vector and `coeffs().last()` is the leading coefficient.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UPoly {
    coeffs: Vec<Rat>,
}

impl UPoly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        UPoly::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn zero() -> Self {
        UPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UPoly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        UPoly::new(vec![c])
    }

    /// The polynomial `u`.
    pub fn var() -> Self {
        UPoly::monomial(Rat::one(), 1)
    }

    pub fn monomial(c: Rat, k: usize) -> Self {
        let mut coeffs = vec![Rat::zero(); k];
        coeffs.push(c);
        UPoly::new(coeffs)
    }

    /// `prod (u - r)` over the given roots.
    pub fn from_roots(roots: &[Rat]) -> Self {
        roots.iter().fold(UPoly::one(), |acc, r| {
            &acc * &UPoly::new(vec![-r.clone(), Rat::one()])
        })
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rat> {
        self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg0(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn lc(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        self.coeffs
            .iter()
            .rev()
            .fold(Rat::zero(), |acc, c| acc * x + c)
    }

    /// Horner evaluation at an element of any ring.
    pub fn eval_in<R: Ring>(&self, x: &R) -> R {
        self.coeffs
            .iter()
            .rev()
            .fold(x.zero_like(), |acc, c| acc.times(x).plus(&x.constant(c)))
    }

    pub fn derivative(&self) -> Self {
        UPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * int(k as i64))
                .collect(),
        )
    }

    pub fn nth_derivative(&self, k: usize) -> Self {
        (0..k).fold(self.clone(), |p, _| p.derivative())
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return UPoly::zero();
        }
        UPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Divides by the leading coefficient; zero stays zero.
    pub fn monic(&self) -> Self {
        match self.lc() {
            Some(lc) if !lc.is_one() => self.scale(&lc.recip()),
            _ => self.clone(),
        }
    }

    pub fn div_rem(&self, d: &UPoly) -> Result<(UPoly, UPoly)> {
        let dd = d
            .degree()
            .ok_or_else(|| Error::InvalidInput("division by the zero polynomial".into()))?;
        let Some(sd) = self.degree() else {
            return Ok((UPoly::zero(), UPoly::zero()));
        };
        if sd < dd {
            return Ok((UPoly::zero(), self.clone()));
        }
        let inv_lc = d.coeffs[dd].recip();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rat::zero(); sd - dd + 1];
        for k in (0..=sd - dd).rev() {
            let c = &rem[k + dd] * &inv_lc;
            if c.is_zero() {
                continue;
            }
            for (i, di) in d.coeffs.iter().enumerate() {
                let t = &c * di;
                rem[k + i] -= t;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((UPoly::new(quot), UPoly::new(rem)))
    }

    /// Remainder modulo a nonzero polynomial; a constant modulus gives zero.
    pub fn rem_by(&self, m: &UPoly) -> UPoly {
        match self.div_rem(m) {
            Ok((_, r)) => r,
            Err(_) => self.clone(),
        }
    }

    pub fn exact_div(&self, d: &UPoly) -> Result<UPoly> {
        let (q, r) = self.div_rem(d)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::InvalidInput("division is not exact".into()))
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(a: &UPoly, b: &UPoly) -> Result<UPoly> {
        if a.is_zero() && b.is_zero() {
            return Err(Error::InvalidInput("gcd of two zero polynomials".into()));
        }
        let (mut r0, mut r1) = (a.monic(), b.monic());
        while !r1.is_zero() {
            let r = r0.rem_by(&r1).monic();
            r0 = r1;
            r1 = r;
        }
        Ok(r0)
    }

    /// Extended Euclid: returns `(g, s, t)` with `s a + t b = g`, `g` monic.
    pub fn xgcd(a: &UPoly, b: &UPoly) -> Result<(UPoly, UPoly, UPoly)> {
        if a.is_zero() && b.is_zero() {
            return Err(Error::InvalidInput("gcd of two zero polynomials".into()));
        }
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (UPoly::one(), UPoly::zero());
        let (mut t0, mut t1) = (UPoly::zero(), UPoly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1)?;
            // keep remainders monic to slow coefficient growth
            let inv = r.lc().map(|c| c.recip()).unwrap_or_else(Rat::one);
            let s = (&s0 - &(&q * &s1)).scale(&inv);
            let t = (&t0 - &(&q * &t1)).scale(&inv);
            r0 = std::mem::replace(&mut r1, r.scale(&inv));
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        let inv = r0.lc().expect("nonzero gcd").recip();
        Ok((r0.scale(&inv), s0.scale(&inv), t0.scale(&inv)))
    }

    /// Inverse modulo `m`, if `gcd(self, m) = 1`.
    pub fn inverse_mod(&self, m: &UPoly) -> Option<UPoly> {
        UPoly::divide_mod(&[UPoly::one()], self, m).map(|mut v| v.remove(0))
    }

    /// `r * a^{-1} mod m` for each `r` in `rhs`, if `gcd(a, m) = 1`.
    pub fn divide_mod(rhs: &[UPoly], a: &UPoly, m: &UPoly) -> Option<Vec<UPoly>> {
        if m.deg0() == 0 {
            // the zero ring: everything is its own inverse
            return (!m.is_zero()).then(|| vec![UPoly::zero(); rhs.len()]);
        }
        let a = a.rem_by(m);
        if a.is_zero() {
            return None;
        }
        if m.deg0() >= MULTIMODULAR_THRESHOLD {
            if let Some(xs) = multimod::divide_mod(rhs, &a, m) {
                return Some(xs);
            }
        }
        let (g, s, _) = UPoly::xgcd(&a, m).ok()?;
        if !g.is_constant() {
            return None;
        }
        let inv = s.rem_by(m);
        Some(rhs.iter().map(|r| r.mul_mod(&inv, m)).collect())
    }

    /// `sum c_k p_k`, accumulated over one common denominator so that
    /// huge coefficients are normalized once rather than after every step.
    pub fn linear_combination(coeffs: &[Rat], polys: &[UPoly]) -> UPoly {
        let len = polys.iter().map(|p| p.coeffs.len()).max().unwrap_or(0);
        let den = bigint::common_denominator(polys.iter().flat_map(|p| p.coeffs.iter()));
        let cden = bigint::common_denominator(coeffs);
        let mut acc = vec![BigInt::zero(); len];
        for (c, p) in coeffs.iter().zip(polys) {
            let scale = c.numer() * (&cden / c.denom());
            for (a, x) in acc.iter_mut().zip(&p.coeffs) {
                *a += x.numer() * (&den / x.denom()) * &scale;
            }
        }
        let total = den * cden;
        UPoly::new(acc.into_iter().map(|a| bigint::ratio(a, total.clone())).collect())
    }

    pub fn mul_mod(&self, other: &UPoly, m: &UPoly) -> UPoly {
        (self * other).rem_by(m)
    }

    /// `self(inner)`.
    pub fn compose(&self, inner: &UPoly) -> UPoly {
        self.coeffs.iter().rev().fold(UPoly::zero(), |acc, c| {
            &(&acc * inner) + &UPoly::constant(c.clone())
        })
    }

    /// `self(inner) mod m`.
    pub fn compose_mod(&self, inner: &UPoly, m: &UPoly) -> UPoly {
        let inner = inner.rem_by(m);
        self.coeffs.iter().rev().fold(UPoly::zero(), |acc, c| {
            (&acc.mul_mod(&inner, m) + &UPoly::constant(c.clone())).rem_by(m)
        })
    }

    /// `p / gcd(p, p')`, monic. Zero maps to zero.
    pub fn squarefree_part(&self) -> UPoly {
        if self.is_constant() {
            return if self.is_zero() { UPoly::zero() } else { UPoly::one() };
        }
        let g = UPoly::gcd(self, &self.derivative()).expect("nonzero input");
        self.exact_div(&g).expect("gcd divides").monic()
    }

    pub fn is_squarefree(&self) -> bool {
        if self.is_constant() {
            return !self.is_zero();
        }
        match modular::squarefree_witness(self) {
            Some(true) => true,
            _ => UPoly::gcd(self, &self.derivative())
                .map(|g| g.is_constant())
                .unwrap_or(false),
        }
    }

    pub fn is_coprime(a: &UPoly, b: &UPoly) -> bool {
        if a.is_zero() || b.is_zero() {
            return a.is_constant() && b.is_constant() && !(a.is_zero() && b.is_zero());
        }
        match modular::coprime_witness(a, b) {
            Some(true) => true,
            _ => UPoly::gcd(a, b).map(|g| g.is_constant()).unwrap_or(false),
        }
    }

    /// Splits `self = content * primitive` where `primitive` has coprime
    /// integer coefficients and a positive leading coefficient.
    pub fn primitive_split(&self) -> (Rat, UPoly) {
        if self.is_zero() {
            return (Rat::one(), UPoly::zero());
        }
        let den_lcm = bigint::common_denominator(&self.coeffs);
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&den_lcm / c.denom()))
            .collect();
        let mut g = ints.iter().fold(BigInt::zero(), |acc, c| bigint::gcd(&acc, c));
        if self.lc().is_some_and(|c| c.is_negative()) {
            g = -g;
        }
        let prim = UPoly::new(ints.into_iter().map(|c| Rat::from_integer(c / &g)).collect());
        (Rat::new(g, den_lcm), prim)
    }

    /// Resultant via the subresultant pseudo-remainder sequence.
    ///
    /// A nonzero constant `c` against a polynomial of degree `k` gives `c^k`.
    pub fn resultant(a: &UPoly, b: &UPoly) -> Result<Rat> {
        if a.is_zero() || b.is_zero() {
            return Err(Error::InvalidInput("resultant with a zero polynomial".into()));
        }
        let (da, db) = (a.deg0(), b.deg0());
        if da == 0 {
            return Ok(num_traits::pow(a.coeffs[0].clone(), db));
        }
        if db == 0 {
            return Ok(num_traits::pow(b.coeffs[0].clone(), da));
        }
        let (ca, mut pa) = a.primitive_split();
        let (cb, mut pb) = b.primitive_split();
        let t = num_traits::pow(ca, db) * num_traits::pow(cb, da);
        let mut s = Rat::one();
        if pa.deg0() < pb.deg0() {
            std::mem::swap(&mut pa, &mut pb);
            if da % 2 == 1 && db % 2 == 1 {
                s = -s;
            }
        }
        let mut g = Rat::one();
        let mut h = Rat::one();
        loop {
            let (dega, degb) = (pa.deg0(), pb.deg0());
            let delta = dega - degb;
            if dega % 2 == 1 && degb % 2 == 1 {
                s = -s;
            }
            let r = pa.pseudo_rem(&pb);
            pa = pb;
            let divisor = &g * num_traits::pow(h.clone(), delta);
            pb = r.scale(&divisor.recip());
            g = pa.lc().expect("nonzero").clone();
            // h <- h^(1-delta) g^delta
            h = if delta == 0 {
                h
            } else {
                num_traits::pow(g.clone(), delta) / num_traits::pow(h, delta - 1)
            };
            if pb.deg0() == 0 {
                break;
            }
        }
        let lcb = pb.coeff(0);
        let dega = pa.deg0();
        let h = num_traits::pow(lcb, dega) / num_traits::pow(h, dega - 1);
        Ok(s * t * h)
    }

    /// `lc(d)^(deg self - deg d + 1) * self mod d`.
    fn pseudo_rem(&self, d: &UPoly) -> UPoly {
        let ds = self.deg0();
        let dd = d.deg0();
        if ds < dd {
            return self.clone();
        }
        let factor = num_traits::pow(d.lc().expect("nonzero").clone(), ds - dd + 1);
        self.scale(&factor).rem_by(d)
    }

    /// The unique polynomial of degree below `points.len()` through the
    /// given points (Newton divided differences).
    pub fn interpolate(points: &[(Rat, Rat)]) -> Result<UPoly> {
        let n = points.len();
        for i in 0..n {
            for j in i + 1..n {
                if points[i].0 == points[j].0 {
                    return Err(Error::InvalidInput("repeated interpolation abscissa".into()));
                }
            }
        }
        let xs: Vec<&Rat> = points.iter().map(|(x, _)| x).collect();
        let mut dd: Vec<Rat> = points.iter().map(|(_, y)| y.clone()).collect();
        for level in 1..n {
            for i in (level..n).rev() {
                dd[i] = (&dd[i] - &dd[i - 1]) / (xs[i] - xs[i - level]);
            }
        }
        let mut acc = UPoly::zero();
        for i in (0..n).rev() {
            acc = &(&acc * &UPoly::new(vec![-xs[i].clone(), Rat::one()]))
                + &UPoly::constant(dd[i].clone());
        }
        Ok(acc)
    }
}

/// Power sums `s_0..s_count` (inclusive of `s_0 = deg p`) of the roots of a
/// monic polynomial, by Newton's identities.
pub fn power_sums(p: &UPoly, count: usize) -> Vec<Rat> {
    let k = p.deg0();
    let c = p.coeffs();
    let mut s = Vec::with_capacity(count + 1);
    s.push(int(k as i64));
    for r in 1..=count {
        let mut acc = Rat::zero();
        for i in 1..=r.min(k) {
            acc += &c[k - i] * &s[r - i];
        }
        if r <= k {
            acc += &c[k - r] * int(r as i64) - &c[k - r] * &s[0];
        }
        s.push(-acc);
    }
    s
}

/// Monic polynomial with prescribed power sums `sums[0..=deg]` (index 0 is
/// ignored), over any ring containing `Q`. Coefficients lowest degree first.
pub fn charpoly_from_power_sums<R: Ring>(sums: &[R], deg: usize) -> Vec<R> {
    let one = sums[0].one_like();
    // elementary symmetric functions
    let mut e = vec![one.clone()];
    for r in 1..=deg {
        let mut acc = one.zero_like();
        for i in 1..=r {
            let term = e[r - i].times(&sums[i]);
            acc = if i % 2 == 1 { acc.plus(&term) } else { acc.minus(&term) };
        }
        e.push(acc.scaled(&Rat::new(BigInt::one(), BigInt::from(r))));
    }
    (0..=deg)
        .map(|h| {
            // coefficient of u^h is (-1)^(deg-h) e_(deg-h)
            let r = deg - h;
            if r.is_multiple_of(2) {
                e[r].clone()
            } else {
                e[r].negated()
            }
        })
        .collect()
}

impl fmt::Debug for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UPoly({self})")
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let coeff = rat_to_string(&mag);
            match (k, mag.is_one()) {
                (0, _) => f.write_str(&coeff)?,
                (1, true) => f.write_str("u")?,
                (1, false) => write!(f, "{coeff}*u")?,
                (_, true) => write!(f, "u^{k}")?,
                (_, false) => write!(f, "{coeff}*u^{k}")?,
            }
        }
        Ok(())
    }
}

impl Add for &UPoly {
    type Output = UPoly;
    fn add(self, rhs: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &UPoly {
    type Output = UPoly;
    fn sub(self, rhs: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UPoly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &UPoly {
    type Output = UPoly;
    fn mul(self, rhs: &UPoly) -> UPoly {
        if self.is_zero() || rhs.is_zero() {
            return UPoly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UPoly::new(out)
    }
}

impl Neg for &UPoly {
    type Output = UPoly;
    fn neg(self) -> UPoly {
        UPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for UPoly {
            type Output = UPoly;
            fn $m(self, rhs: UPoly) -> UPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
