//! Exact scalars and univariate algebra over the rationals.
//!
//! Everything downstream (straight-line programs, resolutions, sign
//! determination) is built on the types here: [`Rat`], the dense
//! [`UPoly`] and truncated power series [`Series`].

pub mod bigint;
mod chebyshev;
mod modular;
mod multimod;
mod pade;
mod series;
mod upoly;

pub use chebyshev::chebyshev;
pub use pade::pade_reconstruct;
pub use series::{Series, TruncSeries};
pub use upoly::{charpoly_from_power_sums, power_sums, UPoly};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Arbitrary precision rational, always kept in lowest terms with a
/// positive denominator.
pub type Rat = num_rational::BigRational;

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Sign of a rational as -1, 0 or 1.
pub fn sign(x: &Rat) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

/// `num/den` (or just `num` for integers), the exchange format for exact values.
pub fn rat_to_string(x: &Rat) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `a`, `a/b` or a finite decimal such as `-0.125`.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(Rat::new(n, d));
    }
    if let Some((ip, fp)) = s.split_once('.') {
        if fp.is_empty() || !fp.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let negative = ip.starts_with('-');
        let ip_digits = ip.trim_start_matches(['-', '+']);
        let whole: BigInt = if ip_digits.is_empty() {
            BigInt::zero()
        } else {
            ip_digits.parse().ok()?
        };
        let frac: BigInt = fp.parse().ok()?;
        let scale = num_traits::pow(BigInt::from(10), fp.len());
        let magnitude = Rat::new(whole * &scale + frac, scale);
        return Some(if negative { -magnitude } else { magnitude });
    }
    let n: BigInt = s.parse().ok()?;
    Some(Rat::from_integer(n))
}

/// Decimal rendering with `digits` digits after the point (truncated toward zero).
pub fn rat_to_decimal(x: &Rat, digits: usize) -> String {
    let negative = x.is_negative();
    let a = x.abs();
    let scale = num_traits::pow(BigInt::from(10), digits);
    let scaled = (a.numer() * &scale) / a.denom();
    let mut s = scaled.to_string();
    if s.len() <= digits {
        s = "0".repeat(digits + 1 - s.len()) + &s;
    }
    let (ip, fp) = s.split_at(s.len() - digits);
    let body = if digits == 0 {
        ip.to_string()
    } else {
        format!("{ip}.{fp}")
    };
    if negative && !scaled.is_zero() {
        format!("-{body}")
    } else {
        body
    }
}

pub fn rat_to_f64(x: &Rat) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rat("3"), Some(int(3)));
        assert_eq!(parse_rat("-6/4"), Some(rat(-3, 2)));
        assert_eq!(parse_rat("0.125"), Some(rat(1, 8)));
        assert_eq!(parse_rat("-1.5"), Some(rat(-3, 2)));
        assert_eq!(parse_rat("1/0"), None);
        assert_eq!(parse_rat("x"), None);
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(rat_to_decimal(&rat(1, 2), 3), "0.500");
        assert_eq!(rat_to_decimal(&rat(-1, 3), 4), "-0.3333");
        assert_eq!(rat_to_decimal(&int(12), 0), "12");
        assert_eq!(rat_to_string(&rat(2, 4)), "1/2");
    }
}
