//! Commutative rings that straight-line programs can be evaluated over.
//!
//! The method names are deliberately distinct from `std::ops` and
//! `num_traits` so both can be in scope at once.

use std::sync::Arc;

use num_traits::{One, Zero};

use crate::exactring::{power_sums, rat_to_f64, Rat, UPoly};

pub trait Ring: Clone {
    /// The constant `c` in the same ring (and with the same shape) as `self`.
    fn constant(&self, c: &Rat) -> Self;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn vanishes(&self) -> bool;
    /// Multiplicative inverse, when the element is a unit.
    fn inverse(&self) -> Option<Self>;

    fn negated(&self) -> Self {
        self.constant(&Rat::zero()).minus(self)
    }
    fn zero_like(&self) -> Self {
        self.constant(&Rat::zero())
    }
    fn one_like(&self) -> Self {
        self.constant(&Rat::one())
    }
    fn scaled(&self, c: &Rat) -> Self {
        self.times(&self.constant(c))
    }
    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.times(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.times(&base);
            }
        }
        acc
    }
}

impl Ring for Rat {
    fn constant(&self, c: &Rat) -> Self {
        c.clone()
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn vanishes(&self) -> bool {
        self.is_zero()
    }
    fn inverse(&self) -> Option<Self> {
        (!self.is_zero()).then(|| self.recip())
    }
    fn negated(&self) -> Self {
        -self
    }
}

impl Ring for f64 {
    fn constant(&self, c: &Rat) -> Self {
        rat_to_f64(c)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn vanishes(&self) -> bool {
        *self == 0.0
    }
    fn inverse(&self) -> Option<Self> {
        (*self != 0.0).then(|| 1.0 / self)
    }
    fn negated(&self) -> Self {
        -self
    }
}

/// Element of `Q[u]/(m)`, represented by its remainder modulo `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotElem {
    rep: UPoly,
    modulus: Arc<UPoly>,
}

impl QuotElem {
    pub fn new(poly: &UPoly, modulus: &Arc<UPoly>) -> Self {
        QuotElem {
            rep: poly.rem_by(modulus),
            modulus: Arc::clone(modulus),
        }
    }

    pub fn rep(&self) -> &UPoly {
        &self.rep
    }

    pub fn into_rep(self) -> UPoly {
        self.rep
    }

    pub fn modulus(&self) -> &Arc<UPoly> {
        &self.modulus
    }
}

impl Ring for QuotElem {
    fn constant(&self, c: &Rat) -> Self {
        QuotElem::new(&UPoly::constant(c.clone()), &self.modulus)
    }
    fn plus(&self, other: &Self) -> Self {
        // sums of reduced representatives stay reduced
        QuotElem {
            rep: &self.rep + &other.rep,
            modulus: Arc::clone(&self.modulus),
        }
    }
    fn minus(&self, other: &Self) -> Self {
        QuotElem {
            rep: &self.rep - &other.rep,
            modulus: Arc::clone(&self.modulus),
        }
    }
    fn times(&self, other: &Self) -> Self {
        QuotElem {
            rep: (&self.rep * &other.rep).rem_by(&self.modulus),
            modulus: Arc::clone(&self.modulus),
        }
    }
    fn vanishes(&self) -> bool {
        self.rep.is_zero()
    }
    fn inverse(&self) -> Option<Self> {
        self.rep.inverse_mod(&self.modulus).map(|rep| QuotElem {
            rep,
            modulus: Arc::clone(&self.modulus),
        })
    }
    fn scaled(&self, c: &Rat) -> Self {
        QuotElem {
            rep: self.rep.scale(c),
            modulus: Arc::clone(&self.modulus),
        }
    }
}

/// The trace form of `Q[u]/(m)` for a monic modulus: `Tr(a) = sum a(xi)`
/// over the roots `xi` of `m`, counted with multiplicity.
#[derive(Clone, Debug)]
pub struct TraceForm {
    sums: Vec<Rat>,
}

impl TraceForm {
    pub fn new(modulus: &UPoly) -> Self {
        let deg = modulus.degree().unwrap_or(0);
        let sums = if deg == 0 {
            Vec::new()
        } else {
            power_sums(&modulus.monic(), deg)
        };
        TraceForm { sums }
    }

    pub fn trace(&self, a: &QuotElem) -> Rat {
        a.rep
            .coeffs()
            .iter()
            .zip(&self.sums)
            .fold(Rat::zero(), |acc, (c, s)| acc + c * s)
    }
}

/// First-order multi-dual numbers `R[e_1..e_k]/(e_i e_j)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Dual<R> {
    pub re: R,
    pub eps: Vec<R>,
}

impl<R: Ring> Dual<R> {
    pub fn new(re: R, eps: Vec<R>) -> Self {
        Dual { re, eps }
    }

    /// `re + e_j` among `k` infinitesimals.
    pub fn variable(re: R, j: usize, k: usize) -> Self {
        let mut eps = vec![re.zero_like(); k];
        eps[j] = re.one_like();
        Dual { re, eps }
    }

    pub fn lift(re: R, k: usize) -> Self {
        let eps = vec![re.zero_like(); k];
        Dual { re, eps }
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Dual<S> {
        Dual {
            re: f(&self.re),
            eps: self.eps.iter().map(f).collect(),
        }
    }
}

impl<R: Ring> Ring for Dual<R> {
    fn constant(&self, c: &Rat) -> Self {
        Dual::lift(self.re.constant(c), self.eps.len())
    }
    fn plus(&self, other: &Self) -> Self {
        Dual {
            re: self.re.plus(&other.re),
            eps: self.eps.iter().zip(&other.eps).map(|(a, b)| a.plus(b)).collect(),
        }
    }
    fn minus(&self, other: &Self) -> Self {
        Dual {
            re: self.re.minus(&other.re),
            eps: self.eps.iter().zip(&other.eps).map(|(a, b)| a.minus(b)).collect(),
        }
    }
    fn times(&self, other: &Self) -> Self {
        Dual {
            re: self.re.times(&other.re),
            eps: self
                .eps
                .iter()
                .zip(&other.eps)
                .map(|(a, b)| self.re.times(b).plus(&a.times(&other.re)))
                .collect(),
        }
    }
    fn vanishes(&self) -> bool {
        self.re.vanishes() && self.eps.iter().all(Ring::vanishes)
    }
    fn inverse(&self) -> Option<Self> {
        let inv = self.re.inverse()?;
        let inv2 = inv.times(&inv).negated();
        Some(Dual {
            eps: self.eps.iter().map(|e| e.times(&inv2)).collect(),
            re: inv,
        })
    }
    fn scaled(&self, c: &Rat) -> Self {
        Dual {
            re: self.re.scaled(c),
            eps: self.eps.iter().map(|e| e.scaled(c)).collect(),
        }
    }
}
