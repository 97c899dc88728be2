use super::{int, UPoly};

/// Chebyshev polynomial of the first kind, `T_0 = 1`, `T_1 = u`,
/// `T_(e+1) = 2u T_e - T_(e-1)`.
pub fn chebyshev(e: usize) -> UPoly {
    let two_u = UPoly::monomial(int(2), 1);
    let (mut prev, mut cur) = (UPoly::one(), UPoly::var());
    if e == 0 {
        return prev;
    }
    for _ in 1..e {
        let next = &(&two_u * &cur) - &prev;
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}
