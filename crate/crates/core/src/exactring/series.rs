use crate::error::{Error, Result};
use crate::ring::Ring;

use super::{Rat, UPoly};

/// Power series truncated at a fixed order `k`: arithmetic is exact modulo `t^k`.
#[derive(Clone, Debug, PartialEq)]
pub struct Series<R> {
    coeffs: Vec<R>,
}

/// Truncated series with rational coefficients.
pub type TruncSeries = Series<Rat>;

impl<R: Ring> Series<R> {
    /// Pads with zeros (or truncates) to exactly `order` coefficients.
    /// `like` supplies the coefficient ring shape when `coeffs` is short.
    pub fn new(mut coeffs: Vec<R>, order: usize, like: &R) -> Self {
        assert!(order >= 1, "series order must be positive");
        coeffs.truncate(order);
        while coeffs.len() < order {
            coeffs.push(like.zero_like());
        }
        Series { coeffs }
    }

    pub fn constant_series(c: R, order: usize) -> Self {
        let like = c.clone();
        Series::new(vec![c], order, &like)
    }

    /// The series `t` (or `0` at order 1).
    pub fn parameter(like: &R, order: usize) -> Self {
        Series::new(vec![like.zero_like(), like.one_like()], order, like)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &R {
        &self.coeffs[k]
    }

    pub fn with_order(&self, order: usize) -> Self {
        Series::new(self.coeffs.clone(), order, &self.coeffs[0])
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Series<S> {
        Series {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.plus(other)
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.times(other)
    }

    /// Inverse of a unit (invertible constant term).
    pub fn inv(&self) -> Result<Self> {
        self.inverse()
            .ok_or_else(|| Error::Singular("series with a non-invertible constant term".into()))
    }
}

impl TruncSeries {
    pub fn from_rats(coeffs: Vec<Rat>, order: usize) -> Self {
        Series::new(coeffs, order, &Rat::default())
    }

    /// Expansion of the polynomial `p(t)` modulo `t^order`.
    pub fn from_poly(p: &UPoly, order: usize) -> Self {
        TruncSeries::from_rats(p.coeffs().to_vec(), order)
    }

    pub fn to_poly(&self) -> UPoly {
        UPoly::new(self.coeffs.clone())
    }
}

impl<R: Ring> Ring for Series<R> {
    fn constant(&self, c: &Rat) -> Self {
        Series::new(vec![self.coeffs[0].constant(c)], self.order(), &self.coeffs[0])
    }

    fn plus(&self, other: &Self) -> Self {
        Series {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.plus(b)).collect(),
        }
    }

    fn minus(&self, other: &Self) -> Self {
        Series {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.minus(b)).collect(),
        }
    }

    fn times(&self, other: &Self) -> Self {
        let k = self.order().min(other.order());
        let zero = self.coeffs[0].zero_like();
        let mut out = vec![zero; k];
        for (i, a) in self.coeffs.iter().take(k).enumerate() {
            if a.vanishes() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(k - i).enumerate() {
                if b.vanishes() {
                    continue;
                }
                out[i + j] = out[i + j].plus(&a.times(b));
            }
        }
        Series { coeffs: out }
    }

    fn vanishes(&self) -> bool {
        self.coeffs.iter().all(Ring::vanishes)
    }

    fn inverse(&self) -> Option<Self> {
        let b0 = self.coeffs[0].inverse()?;
        let k = self.order();
        let mut out: Vec<R> = Vec::with_capacity(k);
        out.push(b0.clone());
        for n in 1..k {
            let mut acc = b0.zero_like();
            for i in 1..=n {
                if self.coeffs[i].vanishes() {
                    continue;
                }
                acc = acc.plus(&self.coeffs[i].times(&out[n - i]));
            }
            out.push(acc.times(&b0).negated());
        }
        Some(Series { coeffs: out })
    }

    fn scaled(&self, c: &Rat) -> Self {
        Series {
            coeffs: self.coeffs.iter().map(|a| a.scaled(c)).collect(),
        }
    }
}
