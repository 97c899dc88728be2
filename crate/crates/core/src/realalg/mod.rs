//! Real algebraic numbers given as roots of univariate polynomials: Tarski
//! queries, sign determination, Thom encodings, and root isolation.

mod interval;
mod isolate;
mod signs;
mod thom;

pub use interval::Interval;
pub use isolate::{isolate_roots, refine, root_count_in, RootInterval};
pub use signs::{sign_determination, tarski_query, SignConditionTable};
pub use thom::{locate_root, thom_compare, thom_encodings, ThomEncoding};

use num_traits::Signed;

use crate::exactring::{sign, Rat, UPoly};

/// Sign of `p` near `+inf` (`at_plus`) or `-inf`.
pub(crate) fn sign_at_infinity(p: &UPoly, at_plus: bool) -> i8 {
    let Some(lc) = p.lc() else { return 0 };
    let s = sign(lc);
    if at_plus || p.deg0().is_multiple_of(2) {
        s
    } else {
        -s
    }
}

/// A positive multiple of `p` with coprime integer coefficients; signs are
/// preserved everywhere.
pub(crate) fn positive_primitive(p: &UPoly) -> UPoly {
    if p.is_zero() {
        return UPoly::zero();
    }
    let (c, prim) = p.primitive_split();
    if c.is_negative() {
        -&prim
    } else {
        prim
    }
}

pub(crate) fn sign_at(p: &UPoly, x: &Rat) -> i8 {
    sign(&p.eval(x))
}
