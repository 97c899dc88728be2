use std::cmp::Ordering;

use super::isolate::{isolate_roots, RootInterval};
use super::signs::sign_determination;
use crate::error::{Error, Result};
use crate::exactring::{sign, UPoly};

/// Signs of `p', p'', .., p^(deg - 1)` at a real root of `p`; the sign of
/// the last derivative is that of the leading coefficient, kept in `leading`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ThomEncoding {
    pub signs: Vec<i8>,
    pub leading: i8,
}

/// Order of two roots of the same polynomial from their encodings.
pub fn thom_compare(a: &ThomEncoding, b: &ThomEncoding) -> Result<Ordering> {
    if a.signs.len() != b.signs.len() || a.leading != b.leading {
        return Err(Error::InvalidInput("encodings refer to different polynomials".into()));
    }
    let Some(k) = (0..a.signs.len()).rev().find(|&k| a.signs[k] != b.signs[k]) else {
        return Ok(Ordering::Equal);
    };
    // p^(k+1) has a common nonzero sign between the roots, so p^(k) is monotone there
    let next = a.signs.get(k + 1).copied().unwrap_or(a.leading);
    if next == 0 {
        return Err(Error::InvalidInput("encodings are not those of distinct roots".into()));
    }
    let ord = a.signs[k].cmp(&b.signs[k]);
    Ok(if next > 0 { ord } else { ord.reverse() })
}

/// Thom encodings of the real roots of a squarefree `p`, in increasing order.
pub fn thom_encodings(p: &UPoly) -> Result<Vec<ThomEncoding>> {
    if p.is_zero() {
        return Err(Error::InvalidInput("zero polynomial".into()));
    }
    if !p.is_squarefree() {
        return Err(Error::InvalidInput("Thom encodings need a squarefree polynomial".into()));
    }
    let deg = p.deg0();
    if deg == 0 {
        return Ok(Vec::new());
    }
    let leading = sign(p.lc().expect("nonzero"));
    let ders: Vec<UPoly> = (1..deg).map(|k| p.nth_derivative(k)).collect();
    let table = sign_determination(p, &ders)?;
    let mut out = Vec::with_capacity(table.rows.len());
    for (signs, count) in table.rows {
        if count != 1 {
            return Err(Error::Invariant("two roots share a Thom encoding".into()));
        }
        out.push(ThomEncoding { signs, leading });
    }
    out.sort_by(|a, b| thom_compare(a, b).expect("same polynomial"));
    Ok(out)
}

/// Isolating interval of the real root of a squarefree `p` with encoding `enc`.
pub fn locate_root(p: &UPoly, enc: &ThomEncoding) -> Result<RootInterval> {
    let encs = thom_encodings(p)?;
    let k = encs
        .iter()
        .position(|e| e == enc)
        .ok_or_else(|| Error::InvalidInput("no real root has this Thom encoding".into()))?;
    let roots = isolate_roots(p);
    roots
        .into_iter()
        .nth(k)
        .ok_or_else(|| Error::Invariant("root isolation and Thom encodings disagree".into()))
}
