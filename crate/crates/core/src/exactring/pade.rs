use num_traits::Zero;

use super::{TruncSeries, UPoly};
use crate::error::{Error, Result};

/// Rational reconstruction of a truncated series: finds `N/D` with
/// `deg N <= num_deg`, `deg D <= den_deg`, `D(0) = 1` and `N/D = s mod t^k`.
///
/// Runs the extended Euclidean algorithm on `(t^k, s)` and stops at the first
/// remainder of degree at most `num_deg`.
pub fn pade_reconstruct(s: &TruncSeries, num_deg: usize, den_deg: usize) -> Result<(UPoly, UPoly)> {
    let k = s.order();
    if k < num_deg + den_deg + 1 {
        return Err(Error::InvalidInput(format!(
            "series order {k} too small for degree bounds ({num_deg}, {den_deg})"
        )));
    }
    let mut r0 = UPoly::monomial(super::int(1), k);
    let mut r1 = s.to_poly();
    let mut t0 = UPoly::zero();
    let mut t1 = UPoly::one();
    while r1.degree().is_some_and(|d| d > num_deg) {
        let (q, r) = r0.div_rem(&r1)?;
        let t = &t0 - &(&q * &t1);
        r0 = std::mem::replace(&mut r1, r);
        t0 = std::mem::replace(&mut t1, t);
    }
    let d0 = t1.coeff(0);
    if d0.is_zero() || t1.deg0() > den_deg {
        return Err(Error::Reconstruction(format!(
            "no rational function with degrees ({num_deg}, {den_deg}) matches the series"
        )));
    }
    let inv = d0.recip();
    Ok((r1.scale(&inv), t1.scale(&inv)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactring::{int, rat, Rat};
    use proptest::prelude::*;

    fn series(c: &[i64], k: usize) -> TruncSeries {
        TruncSeries::from_rats(c.iter().map(|&x| int(x)).collect(), k)
    }

    #[test]
    fn geometric_series() {
        let (n, d) = pade_reconstruct(&series(&[1, 1, 1, 1, 1], 5), 0, 1).unwrap();
        assert_eq!(n, UPoly::one());
        assert_eq!(d, UPoly::from_ints(&[1, -1]));
    }

    #[test]
    fn polynomial_series() {
        let (n, d) = pade_reconstruct(&series(&[1, 1], 5), 1, 0).unwrap();
        assert_eq!(n, UPoly::from_ints(&[1, 1]));
        assert_eq!(d, UPoly::one());
    }

    /// Exhaustive check of the degree-(0,1) ansatz `c / (e + f t)`:
    /// matching `1 + t + t^2 + 2t^3` forces `e = c`, `f = -c` from the first
    /// two coefficients, and then the `t^3` coefficient `2c - c` cannot vanish
    /// unless `c = 0`, which gives the zero function.
    #[test]
    fn reconstruction_failure() {
        let s = series(&[1, 1, 1, 2], 4);
        for c in -3i64..=3 {
            let (e, f) = (int(c), int(-c));
            let lhs: Vec<Rat> = (0..4)
                .map(|j| {
                    let sj = s.coeff(j).clone();
                    let prev = if j > 0 { s.coeff(j - 1).clone() } else { Rat::zero() };
                    &e * sj + &f * prev
                })
                .collect();
            let matches = lhs[0] == int(c) && lhs[1..].iter().all(Zero::is_zero);
            assert!(!matches || c == 0);
        }
        assert!(matches!(pade_reconstruct(&s, 0, 1), Err(Error::Reconstruction(_))));
    }

    #[test]
    fn order_precondition() {
        assert!(matches!(pade_reconstruct(&series(&[1], 2), 1, 1), Err(Error::InvalidInput(_))));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn recovers_known_fraction(
            num in prop::collection::vec(-5i64..=5, 1..=4),
            den_tail in prop::collection::vec(-5i64..=5, 0..=3),
            d0 in prop::sample::select(vec![-3i64, -1, 1, 2]),
        ) {
            let n = UPoly::from_ints(&num);
            let mut dc = vec![d0];
            dc.extend(den_tail);
            let d = UPoly::from_ints(&dc);
            prop_assume!(!n.is_zero() && UPoly::gcd(&n, &d).unwrap().is_constant());
            let (dn, dd) = (n.deg0(), d.deg0());
            let k = dn + dd + 1;
            let s = TruncSeries::from_poly(&n, k).mul(&TruncSeries::from_poly(&d, k).inv().unwrap());
            let (rn, rd) = pade_reconstruct(&s, dn, dd).unwrap();
            let inv = rat(1, d0);
            prop_assert_eq!(rn, n.scale(&inv));
            prop_assert_eq!(rd, d.scale(&inv));
        }
    }
}
