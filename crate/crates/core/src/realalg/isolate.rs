use num_traits::{One, Signed, Zero};

use super::{positive_primitive, sign_at};
use crate::exactring::{int, Rat, UPoly};

/// An isolating interval: either an exact rational root (`lo == hi`) or an
/// open interval with exactly one root and `p(lo) p(hi) < 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct RootInterval {
    pub lo: Rat,
    pub hi: Rat,
}

impl RootInterval {
    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rat {
        (&self.lo + &self.hi) / int(2)
    }

    pub fn to_interval(&self) -> super::Interval {
        super::Interval::new(self.lo.clone(), self.hi.clone())
    }
}

/// Coefficients of `p(x + c)`.
fn taylor_shift(p: &[Rat], c: &Rat) -> Vec<Rat> {
    let mut a = p.to_vec();
    let n = a.len();
    for i in 0..n {
        for j in (i..n - 1).rev() {
            let t = &a[j + 1] * c;
            a[j] += t;
        }
    }
    a
}

fn sign_variations(c: &[Rat]) -> usize {
    let mut last = 0i8;
    let mut count = 0;
    for x in c {
        let s = if x.is_positive() {
            1
        } else if x.is_negative() {
            -1
        } else {
            continue;
        };
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// Descartes bound on the number of roots in the open interval `(a, b)`;
/// exact when it is 0 or 1.
pub fn root_count_in(p: &UPoly, a: &Rat, b: &Rat) -> usize {
    let c = p.coeffs();
    if c.len() <= 1 {
        return 0;
    }
    // p(a + (b - a) x) maps (0, 1) to (a, b)
    let shifted = taylor_shift(c, a);
    let w = b - a;
    let mut pw = Rat::one();
    let mut scaled = Vec::with_capacity(shifted.len());
    for s in shifted {
        scaled.push(s * &pw);
        pw *= &w;
    }
    // (1 + x)^n q(1 / (1 + x)) maps (0, inf) to (0, 1)
    scaled.reverse();
    sign_variations(&taylor_shift(&scaled, &Rat::one()))
}

/// A power of two strictly larger than the absolute value of every root.
fn root_bound(p: &UPoly) -> Rat {
    let c = p.coeffs();
    let lc = c.last().expect("nonzero").abs();
    let m = c[..c.len() - 1].iter().map(|x| x.abs() / &lc).max().unwrap_or_else(Rat::zero);
    let mut b = Rat::one();
    let m = m + Rat::one();
    while b <= m {
        b *= int(2);
    }
    b
}

/// Isolating intervals for the real roots of `p` (its squarefree part is
/// used), ordered from left to right.
pub fn isolate_roots(p: &UPoly) -> Vec<RootInterval> {
    if p.is_zero() || p.is_constant() {
        return Vec::new();
    }
    let p = positive_primitive(&p.squarefree_part());
    let b = root_bound(&p);
    let mut out = Vec::new();
    let mut stack = vec![(-b.clone(), b)];
    while let Some((lo, hi)) = stack.pop() {
        match root_count_in(&p, &lo, &hi) {
            0 => {}
            1 => out.push(RootInterval { lo, hi }),
            _ => {
                let m = (&lo + &hi) / int(2);
                if sign_at(&p, &m) == 0 {
                    out.push(RootInterval {
                        lo: m.clone(),
                        hi: m.clone(),
                    });
                }
                stack.push((lo, m.clone()));
                stack.push((m, hi));
            }
        }
    }
    // move endpoints off neighbouring roots so that the sign change holds
    for r in out.iter_mut().filter(|r| !r.is_exact()) {
        while sign_at(&p, &r.lo) == 0 || sign_at(&p, &r.hi) == 0 {
            let m = r.midpoint();
            if sign_at(&p, &m) == 0 {
                r.lo = m.clone();
                r.hi = m;
                break;
            }
            if root_count_in(&p, &r.lo, &m) == 1 {
                r.hi = m;
            } else {
                r.lo = m;
            }
        }
    }
    out.sort_by(|x, y| x.lo.cmp(&y.lo));
    out
}

/// Bisects until the width is at most `width` (or the root is hit exactly).
pub fn refine(p: &UPoly, r: &RootInterval, width: &Rat) -> RootInterval {
    let mut r = r.clone();
    if r.is_exact() {
        return r;
    }
    let s_lo = sign_at(p, &r.lo);
    while &r.width() > width {
        let m = r.midpoint();
        match sign_at(p, &m) {
            0 => {
                return RootInterval { lo: m.clone(), hi: m };
            }
            s if s == s_lo => r.lo = m,
            _ => r.hi = m,
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactring::rat;

    fn p(c: &[i64]) -> UPoly {
        UPoly::from_ints(c)
    }

    #[test]
    fn examples() {
        let r = isolate_roots(&p(&[-2, 0, 1]));
        assert_eq!(r.len(), 2);
        assert!(r[0].hi <= r[1].lo);
        let fine = refine(&p(&[-2, 0, 1]), &r[1], &rat(1, 1 << 20));
        assert!(fine.lo < rat(141422, 100000) && fine.hi > rat(141421, 100000));
        assert!(isolate_roots(&p(&[1, 0, 1])).is_empty());
        let r = isolate_roots(&p(&[-6, 11, -6, 1]));
        assert_eq!(r.len(), 3);
        for (k, ri) in r.iter().enumerate() {
            let root = int(k as i64 + 1);
            assert!(ri.lo <= root && root <= ri.hi);
        }
    }

    #[test]
    fn roots_on_bisection_points() {
        // 0 and the bound's halves are bisection points
        let r = isolate_roots(&p(&[0, -4, 0, 1]));
        assert_eq!(r.len(), 3);
        assert!(r.iter().any(|x| x.is_exact() && x.lo.is_zero()));
        for x in &r {
            assert!(x.is_exact() || sign_at(&p(&[0, -4, 0, 1]), &x.lo) * sign_at(&p(&[0, -4, 0, 1]), &x.hi) < 0);
        }
    }
}
