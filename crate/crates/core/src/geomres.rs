//! Geometric resolutions: a finite point set encoded by the minimal
//! polynomial `p` of a linear form and one parametrization per coordinate.

use num_traits::One;

use crate::error::{Error, Result};
use crate::exactring::{Rat, UPoly};

#[derive(Clone, Debug, PartialEq)]
pub struct GeomRes {
    /// Monic, squarefree.
    pub p: UPoly,
    /// `x_1..x_n` followed by any multiplier coordinates.
    pub v: Vec<UPoly>,
    pub alpha: Vec<Rat>,
    /// How many leading entries of `v` are x-coordinates.
    pub x_count: usize,
}

impl GeomRes {
    pub fn empty(coords: usize, alpha: &[Rat]) -> Self {
        GeomRes {
            p: UPoly::one(),
            v: vec![UPoly::zero(); coords],
            alpha: alpha.to_vec(),
            x_count: alpha.len(),
        }
    }

    /// Resolution of one rational point.
    pub fn point(coords: &[Rat], alpha: &[Rat]) -> Self {
        let lin: Rat = alpha.iter().zip(coords).map(|(a, x)| a * x).sum();
        GeomRes {
            p: UPoly::new(vec![-lin, Rat::one()]),
            v: coords.iter().map(|c| UPoly::constant(c.clone())).collect(),
            alpha: alpha.to_vec(),
            x_count: alpha.len(),
        }
    }

    pub fn degree(&self) -> usize {
        self.p.deg0()
    }

    pub fn is_empty(&self) -> bool {
        self.degree() == 0
    }

    /// Drops the multiplier coordinates.
    pub fn x_only(&self) -> GeomRes {
        GeomRes {
            p: self.p.clone(),
            v: self.v[..self.x_count].to_vec(),
            alpha: self.alpha.clone(),
            x_count: self.x_count,
        }
    }

    /// `sum alpha_j v_j == u (mod p)` over the x-coordinates.
    pub fn is_separating(&self) -> bool {
        if self.is_empty() {
            return true;
        }
        let acc = UPoly::linear_combination(&self.alpha, &self.v[..self.x_count]);
        (&acc - &UPoly::var()).rem_by(&self.p).is_zero()
    }

    /// Checks monic + squarefree `p`, reduced `v`, and the separating identity.
    pub fn validate(&self) -> Result<()> {
        if self.p.is_zero() || !self.p.lc().is_some_and(|c| c.is_one()) {
            return Err(Error::Invariant("minimal polynomial not monic".into()));
        }
        if self.alpha.len() != self.x_count || self.v.len() < self.x_count {
            return Err(Error::Invariant("coordinate count mismatch".into()));
        }
        let deg = self.degree();
        if self.v.iter().any(|vj| !vj.is_zero() && vj.deg0() >= deg.max(1)) {
            return Err(Error::Invariant("parametrization not reduced".into()));
        }
        if !self.p.is_squarefree() {
            return Err(Error::Separation("minimal polynomial not squarefree".into()));
        }
        if !self.is_separating() {
            return Err(Error::Separation("linear form identity fails".into()));
        }
        Ok(())
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_ok()
    }

    /// Resolution of the union of two point sets by Chinese remaindering.
    /// The inverse is taken modulo the factor of the smaller resolution.
    pub fn union(a: &GeomRes, b: &GeomRes) -> Result<GeomRes> {
        if a.alpha != b.alpha || a.v.len() != b.v.len() || a.x_count != b.x_count {
            return Err(Error::InvalidInput("resolutions use different forms".into()));
        }
        let (big, small) = if a.degree() >= b.degree() { (a, b) } else { (b, a) };
        if small.is_empty() {
            return Ok(big.clone());
        }
        let shared = UPoly::gcd(&small.p, &big.p)?;
        if !shared.is_constant() {
            for (vs, vb) in small.v.iter().zip(&big.v) {
                if !(vs - vb).rem_by(&shared).is_zero() {
                    return Err(Error::Separation(
                        "coordinates disagree on a shared factor".into(),
                    ));
                }
            }
        }
        let rest = small.p.exact_div(&shared)?;
        if rest.is_constant() {
            return Ok(big.clone());
        }
        let inv = big
            .p
            .rem_by(&rest)
            .inverse_mod(&rest)
            .ok_or_else(|| Error::Separation("factors not coprime".into()))?;
        let v = small
            .v
            .iter()
            .zip(&big.v)
            .map(|(vs, vb)| {
                let k = (vs - &vb.rem_by(&rest)).mul_mod(&inv, &rest);
                vb + &(&big.p * &k)
            })
            .collect();
        Ok(GeomRes {
            p: &big.p * &rest,
            v,
            alpha: big.alpha.clone(),
            x_count: big.x_count,
        })
    }
}

/// Resolution stored as `w_j = p' v_j mod p`. Unions of disjoint sets need
/// no modular inverses in this form and the coefficients stay small.
#[derive(Clone, Debug, PartialEq)]
pub struct Kronecker {
    pub p: UPoly,
    pub w: Vec<UPoly>,
    pub alpha: Vec<Rat>,
    pub x_count: usize,
}

impl Kronecker {
    pub fn empty(coords: usize, alpha: &[Rat]) -> Self {
        Kronecker {
            p: UPoly::one(),
            w: vec![UPoly::zero(); coords],
            alpha: alpha.to_vec(),
            x_count: alpha.len(),
        }
    }

    pub fn degree(&self) -> usize {
        self.p.deg0()
    }

    /// Union of two sets whose minimal polynomials are coprime; a shared
    /// factor means the form takes one value at two distinct points.
    pub fn union_disjoint(a: &Kronecker, b: &Kronecker) -> Result<Kronecker> {
        if a.alpha != b.alpha || a.w.len() != b.w.len() {
            return Err(Error::InvalidInput("resolutions use different forms".into()));
        }
        if a.degree() == 0 {
            return Ok(b.clone());
        }
        if b.degree() == 0 {
            return Ok(a.clone());
        }
        if !UPoly::is_coprime(&a.p, &b.p) {
            return Err(Error::Separation("form repeats a value across blocks".into()));
        }
        // p' = a.p' b.p + a.p b.p', so p' v == b.p w_a (mod a.p), likewise for b
        let w = a
            .w
            .iter()
            .zip(&b.w)
            .map(|(wa, wb)| &(&b.p * wa) + &(&a.p * wb))
            .collect();
        Ok(Kronecker {
            p: &a.p * &b.p,
            w,
            alpha: a.alpha.clone(),
            x_count: a.x_count,
        })
    }

    pub fn from_geomres(r: &GeomRes) -> Kronecker {
        let dp = r.p.derivative();
        Kronecker {
            p: r.p.clone(),
            w: r.v.iter().map(|vj| vj.mul_mod(&dp, &r.p)).collect(),
            alpha: r.alpha.clone(),
            x_count: r.x_count,
        }
    }

    /// Converts back; fails when `p` is not squarefree.
    pub fn to_geomres(&self) -> Result<GeomRes> {
        if self.degree() == 0 {
            return Ok(GeomRes::empty(self.w.len(), &self.alpha));
        }
        let v = UPoly::divide_mod(&self.w, &self.p.derivative(), &self.p)
            .ok_or_else(|| Error::Separation("minimal polynomial not squarefree".into()))?;
        Ok(GeomRes {
            p: self.p.clone(),
            v,
            alpha: self.alpha.clone(),
            x_count: self.x_count,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactring::int;
    use num_traits::Zero;
    use proptest::prelude::*;

    fn alpha() -> Vec<Rat> {
        vec![int(1), int(0)]
    }

    #[test]
    fn union_of_two_points() {
        let r1 = GeomRes::point(&[int(1), int(0)], &alpha());
        let r2 = GeomRes::point(&[int(2), int(0)], &alpha());
        let u = GeomRes::union(&r1, &r2).unwrap();
        assert_eq!(u.p, UPoly::from_ints(&[2, -3, 1]));
        assert_eq!(u.v[0], UPoly::var());
        assert!(u.v[1].is_zero());
        assert!(u.is_valid());
    }

    #[test]
    fn union_identity_and_idempotence() {
        let r = GeomRes::point(&[int(3), int(4)], &[int(2), int(1)]);
        let e = GeomRes::empty(2, &[int(2), int(1)]);
        assert_eq!(GeomRes::union(&r, &e).unwrap(), r);
        assert_eq!(GeomRes::union(&e, &r).unwrap(), r);
        assert_eq!(GeomRes::union(&r, &r).unwrap(), r);
    }

    #[test]
    fn non_separating_union_fails() {
        // (1, 1) and (2, 0) both have x1 + x2 = 2
        let a = vec![int(1), int(1)];
        let r1 = GeomRes::point(&[int(1), int(1)], &a);
        let r2 = GeomRes::point(&[int(2), int(0)], &a);
        assert!(matches!(GeomRes::union(&r1, &r2), Err(Error::Separation(_))));
    }

    #[test]
    fn validity_failures() {
        let mut r = GeomRes::point(&[int(1), int(0)], &alpha());
        r.v[0] = UPoly::constant(int(5));
        assert!(!r.is_separating());
        let mut r = GeomRes::point(&[int(1), int(0)], &alpha());
        r.p = UPoly::from_ints(&[1, -2, 1]);
        assert!(r.validate().is_err());
    }

    proptest! {
        #[test]
        fn union_of_points_is_valid(pts in prop::collection::vec((-9i64..=9, -9i64..=9), 1..8)) {
            let a = vec![int(1), int(100)];
            let mut acc = GeomRes::empty(2, &a);
            let mut distinct = std::collections::BTreeSet::new();
            for &(x, y) in &pts {
                acc = GeomRes::union(&acc, &GeomRes::point(&[int(x), int(y)], &a)).unwrap();
                distinct.insert((x, y));
            }
            prop_assert_eq!(acc.degree(), distinct.len());
            prop_assert!(acc.is_valid());
            for &(x, y) in &distinct {
                let u = int(x) + int(100) * int(y);
                prop_assert!(acc.p.eval(&u).is_zero());
                prop_assert_eq!(acc.v[0].eval(&u), int(x));
                prop_assert_eq!(acc.v[1].eval(&u), int(y));
            }
        }
    }
}
