//! Sparse multivariate polynomials with rational coefficients.
//!
//! Used as the intermediate form between parsed expressions and
//! straight-line programs.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::exactring::{rat_to_string, Rat};
use crate::slp::{Node, Slp, SlpBuilder};

/// Exponent vector, one entry per variable.
pub type Monomial = Vec<u32>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rat>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        MPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        let mut p = MPoly::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn var(nvars: usize, j: usize) -> Self {
        let mut e = vec![0; nvars];
        e[j] = 1;
        let mut p = MPoly::zero(nvars);
        p.add_term(e, Rat::one());
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, Rat)>) -> Self {
        let mut p = MPoly::zero(nvars);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: Monomial, c: Rat) {
        assert_eq!(e.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; zero polynomial has degree 0.
    pub fn degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    pub fn is_constant(&self) -> bool {
        self.degree() == 0
    }

    pub fn pow(&self, e: u32) -> MPoly {
        let mut acc = MPoly::constant(self.nvars, Rat::one());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, x: &[Rat]) -> Rat {
        let mut acc = Rat::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (xi, &k) in x.iter().zip(e) {
                for _ in 0..k {
                    t *= xi;
                }
            }
            acc += t;
        }
        acc
    }

    /// Straight-line program computing this polynomial; powers of each
    /// variable are shared across monomials.
    pub fn to_slp(&self) -> Slp {
        let mut b = SlpBuilder::new(self.nvars);
        let out = self.emit(&mut b);
        b.build(&[out])
    }

    /// Builds several polynomials into one multi-output program.
    pub fn to_slp_multi(polys: &[MPoly], nvars: usize) -> Slp {
        let mut b = SlpBuilder::new(nvars);
        let outs: Vec<Node> = polys.iter().map(|p| p.emit(&mut b)).collect();
        b.build(&outs)
    }

    fn emit(&self, b: &mut SlpBuilder) -> Node {
        let mut powers: Vec<Vec<Node>> = (0..self.nvars).map(|j| vec![b.input(j)]).collect();
        let mut terms = Vec::with_capacity(self.terms.len());
        for (e, c) in &self.terms {
            let mut factors = Vec::new();
            for (j, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                while powers[j].len() < k as usize {
                    let last = *powers[j].last().expect("nonempty");
                    let x = powers[j][0];
                    let next = b.mul(last, x);
                    powers[j].push(next);
                }
                factors.push(powers[j][k as usize - 1]);
            }
            let mono = factors.split_first().map(|(f, rest)| rest.iter().fold(*f, |acc, &g| b.mul(acc, g)));
            let term = match mono {
                None => b.constant(c.clone()),
                Some(m) if c.is_one() => m,
                Some(m) => b.scale(c.clone(), m),
            };
            terms.push(term);
        }
        b.sum(&terms)
    }

    /// Human-readable form using the given variable names.
    pub fn display_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        // highest total degree first, then lexicographically largest exponent
        let mut items: Vec<(&Monomial, &Rat)> = self.terms.iter().collect();
        items.sort_by(|a, b| {
            let da: u32 = a.0.iter().sum();
            let db: u32 = b.0.iter().sum();
            db.cmp(&da).then_with(|| b.0.cmp(a.0))
        });
        for (k, (e, c)) in items.into_iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &p)| p > 0)
                .map(|(j, &p)| {
                    if p == 1 {
                        names[j].clone()
                    } else {
                        format!("{}^{}", names[j], p)
                    }
                })
                .collect();
            if vars.is_empty() {
                out.push_str(&rat_to_string(&mag));
            } else {
                if !mag.is_one() {
                    out.push_str(&rat_to_string(&mag));
                    out.push('*');
                }
                out.push_str(&vars.join("*"));
            }
        }
        out
    }
}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        let mut out = MPoly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e: Monomial = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect(),
        }
    }
}
