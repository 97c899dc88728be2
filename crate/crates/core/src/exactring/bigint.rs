//! Integer helpers for very large operands. Below a few hundred bits the
//! `num` routines are used directly; above that the gcd goes through
//! malachite, whose subquadratic algorithm matters once resolutions have
//! coefficients of tens of thousands of bits.

use malachite_base::num::arithmetic::traits::Gcd;
use malachite_nz::natural::Natural;
use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Zero};

use super::Rat;

const SMALL_DIGITS: usize = 8;

fn to_natural(x: &BigUint) -> Natural {
    Natural::from_limbs_asc(&x.to_u64_digits())
}

fn from_natural(x: &Natural) -> BigUint {
    let limbs = x.to_limbs_asc();
    let mut digits = Vec::with_capacity(2 * limbs.len());
    for l in limbs {
        digits.push(l as u32);
        digits.push((l >> 32) as u32);
    }
    BigUint::new(digits)
}

/// Nonnegative gcd.
pub fn gcd(a: &BigInt, b: &BigInt) -> BigInt {
    let (ma, mb) = (a.magnitude(), b.magnitude());
    if ma.iter_u64_digits().len().min(mb.iter_u64_digits().len()) <= SMALL_DIGITS {
        return a.gcd(b);
    }
    let g = to_natural(ma).gcd(to_natural(mb));
    BigInt::from_biguint(Sign::Plus, from_natural(&g))
}

/// Nonnegative lcm.
pub fn lcm(a: &BigInt, b: &BigInt) -> BigInt {
    if a.is_zero() || b.is_zero() {
        return BigInt::zero();
    }
    let g = gcd(a, b);
    (a / g * b).magnitude().clone().into()
}

/// `num / den` in lowest terms; `den` must be nonzero.
pub fn ratio(num: BigInt, den: BigInt) -> Rat {
    let g = gcd(&num, &den);
    let (mut n, mut d) = if g.is_one() { (num, den) } else { (num / &g, den / &g) };
    if d.sign() == Sign::Minus {
        n = -n;
        d = -d;
    }
    Rat::new_raw(n, d)
}

/// Least common denominator of a list of rationals.
pub fn common_denominator<'a>(xs: impl IntoIterator<Item = &'a Rat>) -> BigInt {
    xs.into_iter().fold(BigInt::one(), |acc, c| {
        if c.denom().is_one() || (&acc % c.denom()).is_zero() {
            acc
        } else {
            lcm(&acc, c.denom())
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(bits: &[u32]) -> BigInt {
        BigInt::from_biguint(Sign::Plus, BigUint::new(bits.to_vec()))
    }

    proptest! {
        #[test]
        fn gcd_matches_num(a in prop::collection::vec(any::<u32>(), 1..40),
                           b in prop::collection::vec(any::<u32>(), 1..40),
                           c in prop::collection::vec(any::<u32>(), 1..30)) {
            let (a, b, c) = (big(&a), big(&b), big(&c));
            let (x, y) = (&a * &c, -(&b * &c));
            prop_assert_eq!(gcd(&x, &y), x.gcd(&y));
            prop_assert_eq!(lcm(&x, &y), x.lcm(&y));
            if !y.is_zero() {
                prop_assert_eq!(ratio(x.clone(), y.clone()), Rat::new(x, y));
            }
        }
    }
}
