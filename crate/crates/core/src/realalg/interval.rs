use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::exactring::Rat;
use crate::ring::Ring;

/// Closed interval with rational endpoints; arithmetic encloses every
/// possible result.
#[derive(Clone, Debug, PartialEq)]
pub struct Interval {
    pub lo: Rat,
    pub hi: Rat,
}

impl Interval {
    pub fn new(lo: Rat, hi: Rat) -> Self {
        assert!(lo <= hi, "empty interval");
        Interval { lo, hi }
    }

    pub fn point(x: Rat) -> Self {
        Interval { lo: x.clone(), hi: x }
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rat {
        (&self.lo + &self.hi) / Rat::from_integer(2.into())
    }

    pub fn contains(&self, x: &Rat) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(&Rat::zero())
    }

    /// `Some(sign)` when every point of the interval has that sign.
    pub fn sign(&self) -> Option<i8> {
        if self.lo.is_positive() {
            Some(1)
        } else if self.hi.is_negative() {
            Some(-1)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(0)
        } else {
            None
        }
    }

    pub fn mid_f64(&self) -> f64 {
        self.midpoint().to_f64().unwrap_or(f64::NAN)
    }

    /// Widens the endpoints outward to multiples of `2^-bits`, which keeps
    /// long computations from carrying huge denominators.
    pub fn rounded(&self, bits: u32) -> Self {
        let scale = BigInt::one() << bits;
        let down = |x: &Rat| -> Rat {
            let n = x.numer() * &scale;
            Rat::new(n.div_floor(x.denom()), scale.clone())
        };
        let up = |x: &Rat| -> Rat {
            let n = x.numer() * &scale;
            Rat::new(n.div_ceil(x.denom()), scale.clone())
        };
        Interval {
            lo: down(&self.lo),
            hi: up(&self.hi),
        }
    }
}

impl Ring for Interval {
    fn constant(&self, c: &Rat) -> Self {
        Interval::point(c.clone())
    }

    fn plus(&self, other: &Self) -> Self {
        Interval {
            lo: &self.lo + &other.lo,
            hi: &self.hi + &other.hi,
        }
    }

    fn minus(&self, other: &Self) -> Self {
        Interval {
            lo: &self.lo - &other.hi,
            hi: &self.hi - &other.lo,
        }
    }

    fn times(&self, other: &Self) -> Self {
        let c = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let lo = c.iter().min().expect("four").clone();
        let hi = c.iter().max().expect("four").clone();
        Interval { lo, hi }
    }

    fn vanishes(&self) -> bool {
        self.lo.is_zero() && self.hi.is_zero()
    }

    fn inverse(&self) -> Option<Self> {
        if self.contains_zero() {
            return None;
        }
        Some(Interval {
            lo: self.hi.recip(),
            hi: self.lo.recip(),
        })
    }

    fn negated(&self) -> Self {
        Interval {
            lo: -&self.hi,
            hi: -&self.lo,
        }
    }

    fn scaled(&self, c: &Rat) -> Self {
        self.times(&Interval::point(c.clone()))
    }
}
