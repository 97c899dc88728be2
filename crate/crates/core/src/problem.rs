use crate::error::{Error, Result};
use crate::mpoly::MPoly;
use crate::slp::Slp;

/// `min g(x)` over `E = {f_1 = .. = f_l = 0, f_{l+1} >= 0, .., f_m >= 0}`.
#[derive(Clone, Debug)]
pub struct Problem {
    pub n: usize,
    pub m: usize,
    pub l: usize,
    pub f: Vec<Slp>,
    pub g: Slp,
    /// Even degree bound for `g` and every `f_i`.
    pub d: usize,
}

impl Problem {
    pub fn new(n: usize, f: Vec<Slp>, l: usize, g: Slp, d: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidInput(format!("need at least 2 variables, got {n}")));
        }
        if d < 2 || !d.is_multiple_of(2) {
            return Err(Error::InvalidInput(format!("degree bound must be even and >= 2, got {d}")));
        }
        if l > f.len() {
            return Err(Error::InvalidInput("more equalities than constraints".into()));
        }
        for (i, s) in f.iter().chain(std::iter::once(&g)).enumerate() {
            if s.inputs() != n || s.outputs() != 1 {
                return Err(Error::InvalidInput(format!(
                    "polynomial {i} must have {n} inputs and one output"
                )));
            }
        }
        Ok(Problem {
            n,
            m: f.len(),
            l,
            f,
            g,
            d,
        })
    }

    /// Builds from explicit polynomials. The degree bound defaults to the
    /// smallest even integer that is at least every degree (and at least 2);
    /// an override is rounded up to even.
    pub fn from_polys(f: &[MPoly], l: usize, g: &MPoly, degree: Option<usize>) -> Result<Self> {
        let n = g.nvars();
        if let Some(i) = f.iter().position(|p| p.is_constant()) {
            return Err(Error::InvalidInput(format!("constraint {} is constant", i + 1)));
        }
        if f.iter().any(|p| p.nvars() != n) {
            return Err(Error::InvalidInput("variable count mismatch".into()));
        }
        let maxdeg = f.iter().chain(std::iter::once(g)).map(|p| p.degree() as usize).max().unwrap_or(0);
        let d = match degree {
            Some(k) if k < maxdeg => {
                return Err(Error::InvalidInput(format!(
                    "degree override {k} is below the actual degree {maxdeg}"
                )))
            }
            Some(k) => even_ceil(k),
            None => even_ceil(maxdeg),
        };
        Problem::new(n, f.iter().map(MPoly::to_slp).collect(), l, g.to_slp(), d)
    }
}

/// Smallest even integer >= max(2, k).
pub fn even_ceil(k: usize) -> usize {
    let k = k.max(2);
    k + k % 2
}
