//! Result documents: exact data plus decimal approximations.

use num_bigint::BigInt;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use super::parse::ProblemSource;
use crate::deformation::{bezout_bound, Candidate, Sign};
use crate::error::{Error, Result};
use crate::exactring::{parse_rat, rat_to_decimal, rat_to_string, Rat, UPoly};
use crate::geomres::GeomRes;
use crate::optimizer::{FamilyEntry, MinimizerFamily};
use crate::problem::Problem;
use crate::realalg::ThomEncoding;

pub const SCHEMA: &str = "polymin/v1";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateDoc {
    /// 1-based positions of the active constraints in the problem file.
    pub constraints: Vec<usize>,
    pub signs: Vec<Sign>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EncodingDoc {
    pub signs: Vec<i8>,
    pub leading: i8,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryDoc {
    pub candidate: CandidateDoc,
    /// Coefficients of `p`, lowest degree first.
    pub p: Vec<String>,
    pub v: Vec<Vec<String>>,
    pub thom: EncodingDoc,
    /// Polynomial whose roots are the objective values on the candidate set.
    pub h: Vec<String>,
    pub value_thom: EncodingDoc,
    pub point: Vec<String>,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultDocument {
    pub schema: String,
    pub seed: u64,
    pub retries: usize,
    pub variables: Vec<String>,
    pub alpha: Vec<String>,
    /// Digits after the decimal point in the approximations.
    pub precision: usize,
    pub g_min: String,
    pub entries: Vec<EntryDoc>,
}

fn coeffs(p: &UPoly) -> Vec<String> {
    p.coeffs().iter().map(rat_to_string).collect()
}

fn parse_coeffs(c: &[String]) -> Result<UPoly> {
    c.iter()
        .map(|s| parse_rat(s).ok_or_else(|| Error::InvalidInput(format!("bad rational '{s}'"))))
        .collect::<Result<Vec<_>>>()
        .map(UPoly::new)
}

fn encoding(e: &ThomEncoding) -> EncodingDoc {
    EncodingDoc {
        signs: e.signs.clone(),
        leading: e.leading,
    }
}

fn decode(e: &EncodingDoc) -> ThomEncoding {
    ThomEncoding {
        signs: e.signs.clone(),
        leading: e.leading,
    }
}

/// `x` rounded to `digits` places.
pub fn round_decimal(x: &Rat, digits: usize) -> String {
    let half = Rat::new(BigInt::from(5), num_traits::pow(BigInt::from(10), digits + 1));
    let shifted = if x.is_negative() { x - half } else { x + half };
    rat_to_decimal(&shifted, digits)
}

/// Width of enclosure that leaves `digits` correct places after rounding.
fn target_width(digits: usize) -> Rat {
    Rat::new(BigInt::from(1), num_traits::pow(BigInt::from(10), digits + 1))
}

pub fn build_document(fam: &MinimizerFamily, problem: &Problem, source: &ProblemSource, precision: usize) -> Result<ResultDocument> {
    let order = source.solver_order();
    let width = target_width(precision);
    let mut entries = Vec::with_capacity(fam.entries.len());
    for e in &fam.entries {
        let point = e.point_enclosure(&width)?;
        let value = e.value_enclosure(&problem.g, &width)?;
        entries.push(EntryDoc {
            candidate: CandidateDoc {
                constraints: e.candidate.set.iter().map(|&i| order[i] + 1).collect(),
                signs: e.candidate.sigma.clone(),
            },
            p: coeffs(&e.geomres.p),
            v: e.geomres.v.iter().map(coeffs).collect(),
            thom: encoding(&e.thom),
            h: coeffs(&e.h),
            value_thom: encoding(&e.value),
            point: point.iter().map(|iv| round_decimal(&iv.midpoint(), precision)).collect(),
            value: round_decimal(&value.midpoint(), precision),
        });
    }
    let g_min = entries
        .first()
        .map(|e| e.value.clone())
        .ok_or_else(|| Error::InvalidInput("empty family".into()))?;
    Ok(ResultDocument {
        schema: SCHEMA.into(),
        seed: fam.seed,
        retries: fam.retries,
        variables: source.vars.clone(),
        alpha: fam.alpha.iter().map(rat_to_string).collect(),
        precision,
        g_min,
        entries,
    })
}

impl ResultDocument {
    /// Recovers the exact family; constraint positions are mapped back to
    /// solver order using `source`.
    pub fn to_family(&self, problem: &Problem, source: &ProblemSource) -> Result<MinimizerFamily> {
        if self.schema != SCHEMA {
            return Err(Error::InvalidInput(format!("unsupported schema '{}'", self.schema)));
        }
        let order = source.solver_order();
        let alpha: Vec<Rat> = self
            .alpha
            .iter()
            .map(|s| parse_rat(s).ok_or_else(|| Error::InvalidInput(format!("bad rational '{s}'"))))
            .collect::<Result<_>>()?;
        let mut entries = Vec::with_capacity(self.entries.len());
        for e in &self.entries {
            let set = e
                .candidate
                .constraints
                .iter()
                .map(|&k| {
                    order
                        .iter()
                        .position(|&o| o + 1 == k)
                        .ok_or_else(|| Error::InvalidInput(format!("no constraint {k}")))
                })
                .collect::<Result<Vec<_>>>()?;
            let candidate = Candidate {
                d_s: bezout_bound(problem.n, problem.d, set.len()),
                set,
                sigma: e.candidate.signs.clone(),
            };
            let geomres = GeomRes {
                p: parse_coeffs(&e.p)?,
                v: e.v.iter().map(|c| parse_coeffs(c)).collect::<Result<_>>()?,
                alpha: alpha.clone(),
                x_count: alpha.len(),
            };
            geomres.validate()?;
            entries.push(FamilyEntry {
                candidate,
                geomres,
                thom: decode(&e.thom),
                h: parse_coeffs(&e.h)?,
                value: decode(&e.value_thom),
            });
        }
        Ok(MinimizerFamily {
            entries,
            alpha,
            retries: self.retries,
            seed: self.seed,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("result document: {e}")))
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("minimum value: {}\n", self.g_min);
        out.push_str(&format!(
            "minimizers: {} (seed {}, {} retr{})\n",
            self.entries.len(),
            self.seed,
            self.retries,
            if self.retries == 1 { "y" } else { "ies" }
        ));
        for (k, e) in self.entries.iter().enumerate() {
            let active: Vec<String> = e
                .candidate
                .constraints
                .iter()
                .zip(&e.candidate.signs)
                .map(|(c, s)| format!("{c}{s}"))
                .collect();
            out.push_str(&format!("\n[{}] active constraints {{{}}}\n", k + 1, active.join(",")));
            for (name, x) in self.variables.iter().zip(&e.point) {
                out.push_str(&format!("  {name} = {x}\n"));
            }
            let p = parse_coeffs(&e.p).map(|p| p.to_string()).unwrap_or_default();
            out.push_str(&format!("  root of p(u) = {p}\n"));
            out.push_str(&format!("  thom encoding {:?}\n", e.thom.signs));
        }
        out
    }

    pub fn render(&self, fmt: Format) -> String {
        match fmt {
            Format::Json => self.to_json(),
            Format::Text => self.to_text(),
        }
    }
}

/// Whether the decimal string `s` parses to a value within `tol` of `x`.
pub fn decimal_close(s: &str, x: &Rat, tol: &Rat) -> bool {
    parse_rat(s).is_some_and(|v| (v - x).abs() <= *tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactring::{int, rat};
    use crate::frontend::parse::parse_source;

    #[test]
    fn rounding() {
        assert_eq!(round_decimal(&rat(1, 3), 3), "0.333");
        assert_eq!(round_decimal(&rat(2, 3), 3), "0.667");
        assert_eq!(round_decimal(&rat(-2, 3), 2), "-0.67");
        assert_eq!(round_decimal(&int(-1), 2), "-1.00");
        assert!(decimal_close("0.500", &rat(1, 2), &rat(1, 1000)));
    }

    #[test]
    fn document_round_trip() {
        let source = parse_source("vars: x y\nminimize: x^2 + y^2\nge: x\neq: x + y - 1\n").unwrap();
        let problem = source.to_problem().unwrap();
        let alpha = vec![int(1), int(3)];
        let gr = GeomRes::point(&[rat(1, 2), rat(1, 2)], &alpha);
        let r = crate::optimizer::min_in_geomres(&gr, &problem).unwrap();
        let cands = crate::deformation::enumerate_candidates(&problem);
        let fam = MinimizerFamily {
            entries: vec![FamilyEntry {
                candidate: cands.iter().find(|c| c.set == vec![0]).unwrap().clone(),
                geomres: gr,
                thom: r.thoms[0].clone(),
                h: r.h.clone(),
                value: r.value.clone().unwrap(),
            }],
            alpha,
            retries: 1,
            seed: 9,
        };
        let doc = build_document(&fam, &problem, &source, 30).unwrap();
        assert_eq!(doc.entries[0].candidate.constraints, vec![2]);
        assert_eq!(doc.g_min, format!("0.5{}", "0".repeat(29)));
        let back = ResultDocument::from_json(&doc.to_json()).unwrap();
        assert_eq!(back, doc);
        assert_eq!(back.to_family(&problem, &source).unwrap(), fam);
        assert!(doc.to_text().contains("x = 0.5"));
    }
}
