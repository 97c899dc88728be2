//! Line-oriented problem format.
//!
//! ```text
//! # comment
//! vars: x1 x2
//! minimize: x1^2 + x2^2
//! eq: x1 + x2 - 1
//! ge: 1 - x1^2 - x2^2
//! degree: 4
//! ```

use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactring::{parse_rat, Rat};
use crate::mpoly::MPoly;
use crate::problem::Problem;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConstraintKind {
    Eq,
    Ge,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProblemSource {
    pub vars: Vec<String>,
    pub objective: MPoly,
    /// In file order.
    pub constraints: Vec<(ConstraintKind, MPoly)>,
    pub degree: Option<usize>,
}

impl ProblemSource {
    /// Source positions of the constraints in solver order (equalities first).
    pub fn solver_order(&self) -> Vec<usize> {
        let eqs = (0..self.constraints.len()).filter(|&i| self.constraints[i].0 == ConstraintKind::Eq);
        let ges = (0..self.constraints.len()).filter(|&i| self.constraints[i].0 == ConstraintKind::Ge);
        eqs.chain(ges).collect()
    }

    pub fn to_problem(&self) -> Result<Problem> {
        let order = self.solver_order();
        let f: Vec<MPoly> = order.iter().map(|&i| self.constraints[i].1.clone()).collect();
        let l = self.constraints.iter().filter(|c| c.0 == ConstraintKind::Eq).count();
        Problem::from_polys(&f, l, &self.objective, self.degree)
    }

    /// Canonical text; parsing it gives back an equal source.
    pub fn pretty(&self) -> String {
        let mut out = format!("vars: {}\nminimize: {}\n", self.vars.join(" "), self.objective.display_with(&self.vars));
        for (kind, p) in &self.constraints {
            let tag = match kind {
                ConstraintKind::Eq => "eq",
                ConstraintKind::Ge => "ge",
            };
            out.push_str(&format!("{tag}: {}\n", p.display_with(&self.vars)));
        }
        if let Some(d) = self.degree {
            out.push_str(&format!("degree: {d}\n"));
        }
        out
    }
}

fn err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Rat),
    Ident(String),
    Op(char),
}

struct Lexed {
    toks: Vec<(Tok, usize)>,
    end: usize,
}

fn lex(text: &str, line: usize, col0: usize) -> Result<Lexed> {
    let chars: Vec<char> = text.chars().collect();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = col0 + i;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || (c == '.' && chars.get(i + 1).is_some_and(char::is_ascii_digit)) {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            let v = parse_rat(&s).ok_or_else(|| err(line, col, format!("malformed number '{s}'")))?;
            toks.push((Tok::Num(v), col));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            toks.push((Tok::Ident(chars[start..i].iter().collect()), col));
        } else if "+-*/^()".contains(c) {
            toks.push((Tok::Op(c), col));
            i += 1;
        } else {
            return Err(err(line, col, format!("unexpected character '{c}'")));
        }
    }
    Ok(Lexed {
        toks,
        end: col0 + chars.len(),
    })
}

struct ExprParser<'a> {
    toks: &'a [(Tok, usize)],
    pos: usize,
    end: usize,
    line: usize,
    vars: &'a [String],
}

impl ExprParser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |t| t.1)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn n(&self) -> usize {
        self.vars.len()
    }

    // expr := ['-'|'+'] term (('+'|'-') term)*
    fn expr(&mut self) -> Result<MPoly> {
        let neg = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        let mut acc = self.term()?;
        if neg {
            acc = -&acc;
        }
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    // term := factor (('*'|'/') factor)*
    fn term(&mut self) -> Result<MPoly> {
        let mut acc = self.factor()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.factor()?;
            } else if self.peek() == Some(&Tok::Op('/')) {
                let col = self.col();
                self.pos += 1;
                let d = self.factor()?;
                if !d.is_constant() {
                    return Err(err(self.line, col, "division by a non-constant expression"));
                }
                let c = d.eval(&vec![Rat::zero(); self.n()]);
                if c.is_zero() {
                    return Err(err(self.line, col, "division by zero"));
                }
                acc = &acc * &MPoly::constant(self.n(), c.recip());
            } else {
                return Ok(acc);
            }
        }
    }

    // factor := atom ['^' integer]
    fn factor(&mut self) -> Result<MPoly> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let col = self.col();
        match self.peek().cloned() {
            Some(Tok::Num(v)) if v.is_integer() => {
                self.pos += 1;
                let e = v
                    .to_integer()
                    .to_u32()
                    .filter(|&e| e <= 64)
                    .ok_or_else(|| err(self.line, col, "exponent must be an integer between 0 and 64"))?;
                Ok(base.pow(e))
            }
            _ => Err(err(self.line, col, "exponent must be a non-negative integer literal")),
        }
    }

    fn atom(&mut self) -> Result<MPoly> {
        let col = self.col();
        match self.peek().cloned() {
            Some(Tok::Num(v)) => {
                self.pos += 1;
                Ok(MPoly::constant(self.n(), v))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                let j = self
                    .vars
                    .iter()
                    .position(|v| *v == name)
                    .ok_or_else(|| err(self.line, col, format!("unknown variable '{name}'")))?;
                Ok(MPoly::var(self.n(), j))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(err(self.line, self.col(), "expected ')'"));
                }
                Ok(e)
            }
            Some(Tok::Op(c)) => Err(err(self.line, col, format!("unexpected '{c}'"))),
            None => Err(err(self.line, col, "unexpected end of expression")),
        }
    }
}

fn parse_expr(text: &str, line: usize, col0: usize, vars: &[String]) -> Result<MPoly> {
    let lexed = lex(text, line, col0)?;
    let mut p = ExprParser {
        toks: &lexed.toks,
        pos: 0,
        end: lexed.end,
        line,
        vars,
    };
    let e = p.expr()?;
    if p.pos != lexed.toks.len() {
        return Err(err(line, p.col(), "unexpected trailing input"));
    }
    Ok(e)
}

/// Parses the text format without building the solver problem.
pub fn parse_source(text: &str) -> Result<ProblemSource> {
    let mut vars: Option<Vec<String>> = None;
    let mut objective: Option<MPoly> = None;
    let mut constraints = Vec::new();
    let mut degree = None;
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let body = raw.split('#').next().unwrap_or("");
        if body.trim().is_empty() {
            continue;
        }
        let indent = body.len() - body.trim_start().len();
        let Some((key, rest)) = body.split_once(':') else {
            return Err(err(line, indent + 1, "expected 'key: value'"));
        };
        // 1-based column of the first character after the colon
        let col0 = key.chars().count() + 2;
        let key = key.trim();
        let need_vars = |vars: &Option<Vec<String>>| -> Result<Vec<String>> {
            vars.clone().ok_or_else(|| err(line, indent + 1, "'vars:' must come first"))
        };
        match key {
            "vars" => {
                if vars.is_some() {
                    return Err(err(line, indent + 1, "duplicate 'vars:' line"));
                }
                let names: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
                for (i, nm) in names.iter().enumerate() {
                    let ok = nm.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                        && nm.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
                    if !ok {
                        return Err(err(line, col0, format!("invalid variable name '{nm}'")));
                    }
                    if names[..i].contains(nm) {
                        return Err(err(line, col0, format!("variable '{nm}' declared twice")));
                    }
                }
                if names.len() < 2 {
                    return Err(err(line, col0, format!("at least 2 variables are required, got {}", names.len())));
                }
                vars = Some(names);
            }
            "minimize" => {
                let v = need_vars(&vars)?;
                if objective.is_some() {
                    return Err(err(line, indent + 1, "duplicate 'minimize:' line"));
                }
                objective = Some(parse_expr(rest, line, col0, &v)?);
            }
            "eq" | "ge" => {
                let v = need_vars(&vars)?;
                let p = parse_expr(rest, line, col0, &v)?;
                if p.is_constant() {
                    return Err(err(line, col0, "constraint is constant"));
                }
                let kind = if key == "eq" { ConstraintKind::Eq } else { ConstraintKind::Ge };
                constraints.push((kind, p));
            }
            "degree" => {
                let d: usize = rest
                    .trim()
                    .parse()
                    .map_err(|_| err(line, col0, "degree must be a non-negative integer"))?;
                degree = Some(d);
            }
            other => return Err(err(line, indent + 1, format!("unknown key '{other}'"))),
        }
    }
    let vars = vars.ok_or_else(|| err(1, 1, "missing 'vars:' line"))?;
    let objective = objective.ok_or_else(|| err(1, 1, "missing 'minimize:' line"))?;
    Ok(ProblemSource {
        vars,
        objective,
        constraints,
        degree,
    })
}

pub fn parse_problem(text: &str) -> Result<Problem> {
    parse_source(text)?.to_problem()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactring::{int, rat};
    use proptest::prelude::*;

    #[test]
    fn examples() {
        let p = parse_problem("vars: x1 x2\nminimize: x1^2 + x2^2\neq: x1 + x2 - 1\n").unwrap();
        assert_eq!((p.n, p.m, p.l, p.d), (2, 1, 1, 2));
        let p = parse_problem("vars: x y\nminimize: x^3 + y\n").unwrap();
        assert_eq!(p.d, 4);
        let e = parse_problem("vars: x1\nminimize: x1\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 1, .. }), "{e}");
    }

    #[test]
    fn values_and_order() {
        let s = parse_source("vars: x y\nminimize: -x^2*y/2 + 3/4 - (x - 1)*(x + 1)\nge: 0.5 - y\neq: x - y\n").unwrap();
        let x = [int(2), int(3)];
        assert_eq!(s.objective.eval(&x), int(-6) + rat(3, 4) - int(3));
        assert_eq!(s.constraints[0].1.eval(&x), rat(-5, 2));
        assert_eq!(s.solver_order(), vec![1, 0]);
        let p = s.to_problem().unwrap();
        assert_eq!((p.m, p.l), (2, 1));
    }

    #[test]
    fn error_positions() {
        let cases = [
            ("vars: x y\nminimize: x + z\n", 2, 15),
            ("vars: x y\nminimize: x / y\n", 2, 13),
            ("vars: x y\nminimize: x +\n", 2, 14),
            ("vars: x y\nminimize: x $ y\n", 2, 13),
            ("vars: x y\nminimize: x\neq: 3\n", 3, 4),
            ("minimize: x\n", 1, 1),
            ("vars: x y\nminimize: x^y\n", 2, 13),
            ("vars: x y\nbogus: x\n", 2, 1),
        ];
        for (text, line, column) in cases {
            match parse_source(text) {
                Err(Error::Parse { line: l, column: c, .. }) => assert_eq!((l, c), (line, column), "{text}"),
                other => panic!("{text}: {other:?}"),
            }
        }
    }

    #[test]
    fn comments_and_blank_lines() {
        let s = parse_source("# header\n\nvars: a b  # two\nminimize: a*b\n").unwrap();
        assert_eq!(s.vars, vec!["a", "b"]);
    }

    fn expr(depth: u32) -> BoxedStrategy<String> {
        let leaf = prop_oneof![
            (0i64..20).prop_map(|n| n.to_string()),
            (1i64..9, 2i64..9).prop_map(|(a, b)| format!("{a}/{b}")),
            prop::sample::select(vec!["x".to_string(), "y".to_string(), "z".to_string()]),
        ];
        leaf.prop_recursive(depth, 24, 3, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a}) + ({b})")),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a}) - ({b})")),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a})*({b})")),
                (inner.clone(), 0u32..3).prop_map(|(a, e)| format!("({a})^{e}")),
                inner.prop_map(|a| format!("-({a})")),
            ]
        })
        .boxed()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(50))]
        #[test]
        fn pretty_print_is_a_fixed_point(obj in expr(3), c1 in expr(2), c2 in expr(2), deg in prop::option::of(0usize..9)) {
            let mut text = format!("vars: x y z\nminimize: {obj}\n");
            for (tag, c) in [("eq", &c1), ("ge", &c2)] {
                text.push_str(&format!("{tag}: ({c}) + x*y*z^9\n"));
            }
            if let Some(d) = deg {
                text.push_str(&format!("degree: {d}\n"));
            }
            let first = parse_source(&text).unwrap();
            let printed = first.pretty();
            let second = parse_source(&printed).unwrap();
            prop_assert_eq!(&second, &first);
            prop_assert_eq!(second.pretty(), printed);
        }
    }
}
