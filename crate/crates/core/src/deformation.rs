//! Deformation data: the Cauchy matrix, the Chebyshev start system, the
//! candidate set and the deformed Lagrange systems joining the start system
//! (t = 0) to the target (t = 1).

use std::fmt;

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::exactring::{chebyshev, Rat, UPoly};
use crate::problem::Problem;
use crate::slp::{Node, Slp, SlpBuilder};

/// First `m` primes greater than `n + 1`.
pub fn primes_after(n: usize, m: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(m);
    let mut k = n as u64 + 2;
    while out.len() < m {
        if is_prime(k) {
            out.push(k);
        }
        k += 1;
    }
    out
}

fn is_prime(k: u64) -> bool {
    if k < 2 {
        return false;
    }
    let mut i = 2;
    while i * i <= k {
        if k.is_multiple_of(i) {
            return false;
        }
        i += 1;
    }
    true
}

pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

/// `D_s = C(n, s) d^s (d - 1)^(n - s)`.
pub fn bezout_bound(n: usize, d: usize, s: usize) -> usize {
    assert!(s <= n && d >= 2);
    let v = binomial(n, s) * (d as u64).pow(s as u32) * (d as u64 - 1).pow((n - s) as u32);
    v as usize
}

#[derive(Clone, Debug)]
pub struct DeformationData {
    /// `q_0 = n + 1` followed by the primes.
    pub q: Vec<u64>,
    /// `a[i][j] = 1 / (q_i - j)`, `(m + 1) x (n + 1)`.
    pub a: Vec<Vec<Rat>>,
    pub tilde_g: Slp,
    pub tilde_f: Vec<Slp>,
    /// `T_d`.
    pub cheb: UPoly,
}

pub fn build_deformation(p: &Problem) -> DeformationData {
    let mut q = vec![p.n as u64 + 1];
    q.extend(primes_after(p.n, p.m));
    let a: Vec<Vec<Rat>> = q
        .iter()
        .map(|&qi| {
            (0..=p.n)
                .map(|j| Rat::new(1.into(), (qi as i64 - j as i64).into()))
                .collect()
        })
        .collect();
    let cheb = chebyshev(p.d);

    let start = |b: &mut SlpBuilder| -> Vec<Node> {
        (0..p.n)
            .map(|j| {
                let x = b.input(j);
                b.upoly(&cheb, x)
            })
            .collect()
    };

    let mut b = SlpBuilder::new(p.n);
    let t = start(&mut b);
    let terms: Vec<Node> = (0..p.n).map(|j| b.scale(a[0][j + 1].clone(), t[j])).collect();
    let out = b.sum(&terms);
    let tilde_g = b.build(&[out]);

    let tilde_f = (1..=p.m)
        .map(|i| {
            let mut b = SlpBuilder::new(p.n);
            let t = start(&mut b);
            let mut terms = vec![b.constant(a[i][0].clone())];
            for j in 0..p.n {
                let one = b.constant(Rat::one());
                let shifted = b.add(t[j], one);
                terms.push(b.scale(a[i][j + 1].clone(), shifted));
            }
            let out = b.sum(&terms);
            b.build(&[out])
        })
        .collect();

    DeformationData {
        q,
        a,
        tilde_g,
        tilde_f,
        cheb,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn as_rat(self) -> Rat {
        match self {
            Sign::Plus => Rat::one(),
            Sign::Minus => -Rat::one(),
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// A pair `(S, sigma)`; indices in `set` are 0-based into the constraint list.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Candidate {
    pub set: Vec<usize>,
    pub sigma: Vec<Sign>,
    pub d_s: usize,
}

impl Candidate {
    pub fn s(&self) -> usize {
        self.set.len()
    }
}

impl fmt::Display for Candidate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.set.is_empty() {
            return f.write_str("{}");
        }
        let parts: Vec<String> = self
            .set
            .iter()
            .zip(&self.sigma)
            .map(|(i, s)| format!("{}{}", i + 1, s))
            .collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

fn subsets(m: usize, s: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, m: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in start..=m - left {
            cur.push(i);
            rec(i + 1, m, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, m, s, &mut Vec::new(), &mut out);
    out
}

/// All `(S, sigma)` with `|S| <= min(n, m)`; equalities may take either sign,
/// inequalities are fixed to `+`. Ordered by `|S|`, then `S`, then `sigma`
/// with `+` before `-`.
pub fn enumerate_candidates(p: &Problem) -> Vec<Candidate> {
    let mut out = Vec::new();
    for s in 0..=p.n.min(p.m) {
        let d_s = bezout_bound(p.n, p.d, s);
        for set in subsets(p.m, s) {
            let free: Vec<usize> = (0..s).filter(|&k| set[k] < p.l).collect();
            for mask in 0..(1u64 << free.len()) {
                let mut sigma = vec![Sign::Plus; s];
                for (bit, &k) in free.iter().enumerate() {
                    if mask >> (free.len() - 1 - bit) & 1 == 1 {
                        sigma[k] = Sign::Minus;
                    }
                }
                out.push(Candidate {
                    set: set.clone(),
                    sigma,
                    d_s,
                });
            }
        }
    }
    out
}

/// Deformed Lagrange system for one candidate, over the inputs
/// `(t, x_1..x_n, lambda_1..lambda_s)`.
#[derive(Clone, Debug)]
pub struct DeformedSystem {
    pub n: usize,
    pub s: usize,
    /// `F_i^{sigma_i}` for `i` in `S`, then `G_1..G_n`.
    pub equations: Vec<Slp>,
    /// All equations as one multi-output program.
    pub system: Slp,
}

impl DeformedSystem {
    pub fn f_part(&self) -> &[Slp] {
        &self.equations[..self.s]
    }

    pub fn g_part(&self) -> &[Slp] {
        &self.equations[self.s..]
    }

    /// Unknowns (x and lambda) per point.
    pub fn unknowns(&self) -> usize {
        self.n + self.s
    }
}

pub fn build_deformed_system(p: &Problem, dd: &DeformationData, c: &Candidate) -> DeformedSystem {
    let n = p.n;
    let s = c.s();
    let grad_g = p.g.gradient().expect("single output");
    let grad_tg = dd.tilde_g.gradient().expect("single output");
    let grads_f: Vec<Slp> = c.set.iter().map(|&i| p.f[i].gradient().expect("single output")).collect();
    let grads_tf: Vec<Slp> = c
        .set
        .iter()
        .map(|&i| dd.tilde_f[i].gradient().expect("single output"))
        .collect();

    let build = |b: &mut SlpBuilder| -> Vec<Node> {
        let t = b.input(0);
        let x: Vec<Node> = (0..n).map(|j| b.input(1 + j)).collect();
        let lam: Vec<Node> = (0..s).map(|k| b.input(1 + n + k)).collect();
        let one = b.constant(Rat::one());
        let one_minus_t = b.sub(one, t);

        let dg = b.embed(&grad_g, &x);
        let dtg = b.embed(&grad_tg, &x);
        let df: Vec<Vec<Node>> = grads_f.iter().map(|gr| b.embed(gr, &x)).collect();
        let dtf: Vec<Vec<Node>> = grads_tf.iter().map(|gr| b.embed(gr, &x)).collect();

        let mut outs = Vec::with_capacity(s + n);
        for k in 0..s {
            let a = b.mul(t, df[k][0]);
            let bb = b.mul(one_minus_t, dtf[k][0]);
            outs.push(match c.sigma[k] {
                Sign::Plus => b.add(a, bb),
                Sign::Minus => b.sub(a, bb),
            });
        }
        for j in 0..n {
            let mut target = dg[1 + j];
            let mut start = dtg[1 + j];
            for k in 0..s {
                let lf = b.mul(lam[k], df[k][1 + j]);
                target = b.sub(target, lf);
                let ltf = b.mul(lam[k], dtf[k][1 + j]);
                start = match c.sigma[k] {
                    Sign::Plus => b.sub(start, ltf),
                    Sign::Minus => b.add(start, ltf),
                };
            }
            let a = b.mul(t, target);
            let bb = b.mul(one_minus_t, start);
            outs.push(b.add(a, bb));
        }
        outs
    };

    let inputs = 1 + n + s;
    let mut b = SlpBuilder::new(inputs);
    let outs = build(&mut b);
    let system = b.build(&outs);
    let equations = (0..s + n).map(|k| system.select(&[k])).collect();
    DeformedSystem {
        n,
        s,
        equations,
        system,
    }
}

/// The target Lagrange system `f_S = 0, grad g = sum lambda_i grad f_i` over
/// inputs `(x, lambda)`; what the deformed system becomes at `t = 1`.
pub fn lagrange_system(p: &Problem, c: &Candidate) -> Slp {
    let n = p.n;
    let s = c.s();
    let mut b = SlpBuilder::new(n + s);
    let x: Vec<Node> = (0..n).map(|j| b.input(j)).collect();
    let lam: Vec<Node> = (0..s).map(|k| b.input(n + k)).collect();
    let dg = b.embed(&p.g.gradient().expect("single output"), &x);
    let df: Vec<Vec<Node>> = c
        .set
        .iter()
        .map(|&i| b.embed(&p.f[i].gradient().expect("single output"), &x))
        .collect();
    let mut outs: Vec<Node> = df.iter().map(|d| d[0]).collect();
    for j in 0..n {
        let mut e = dg[1 + j];
        for k in 0..s {
            let term = b.mul(lam[k], df[k][1 + j]);
            e = b.sub(e, term);
        }
        outs.push(e);
    }
    b.build(&outs)
}

/// Number of `(S, sigma)` pairs, from the closed form
/// `sum_{s1 + s2 <= n} C(l, s1) C(m - l, s2) 2^s1`.
pub fn candidate_count(n: usize, m: usize, l: usize) -> u64 {
    let mut total = 0;
    for s1 in 0..=l.min(n) {
        for s2 in 0..=(m - l).min(n - s1) {
            total += binomial(l, s1) * binomial(m - l, s2) * (1u64 << s1);
        }
    }
    total
}

/// `A` restricted to rows `rows` (1-based constraint rows) and the given
/// variable columns (0-based variables, shifted past the constant column).
pub fn cauchy_block(dd: &DeformationData, rows: &[usize], cols: &[usize]) -> Vec<Vec<Rat>> {
    rows.iter()
        .map(|&i| cols.iter().map(|&j| dd.a[i][j + 1].clone()).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactring::{int, rat};
    use crate::mpoly::MPoly;
    use num_traits::Zero;
    use proptest::prelude::*;

    fn circle_problem(l: usize) -> Problem {
        // min x1 s.t. x1^2 + x2^2 - 1 (= or >=) 0
        let x = MPoly::var(2, 0);
        let y = MPoly::var(2, 1);
        let f = &(&(&x * &x) + &(&y * &y)) - &MPoly::constant(2, int(1));
        Problem::from_polys(&[f], l, &x, None).unwrap()
    }

    fn generic_problem(n: usize, m: usize, l: usize, d: usize) -> Problem {
        let vars: Vec<MPoly> = (0..n).map(|j| MPoly::var(n, j)).collect();
        let mut g = MPoly::zero(n);
        for (j, v) in vars.iter().enumerate() {
            g = &g + &(&v.pow(d as u32) * &MPoly::constant(n, int(j as i64 + 1)));
        }
        let f: Vec<MPoly> = (0..m)
            .map(|i| &(&vars[i % n] * &vars[(i + 1) % n]) - &MPoly::constant(n, int(i as i64 + 2)))
            .collect();
        Problem::from_polys(&f, l, &g, Some(d)).unwrap()
    }

    #[test]
    fn primes() {
        assert_eq!(primes_after(2, 3), vec![5, 7, 11]);
        assert_eq!(primes_after(4, 1), vec![7]);
        assert!(primes_after(2, 0).is_empty());
    }

    #[test]
    fn bezout() {
        assert_eq!(bezout_bound(2, 2, 1), 4);
        assert_eq!(bezout_bound(2, 2, 0), 1);
        assert_eq!(bezout_bound(3, 4, 2), 144);
    }

    #[test]
    fn cauchy_rows_and_tilde_system() {
        let p = circle_problem(1);
        let dd = build_deformation(&p);
        assert_eq!(dd.a[0], vec![rat(1, 3), rat(1, 2), int(1)]);
        assert_eq!(dd.a[1], vec![rat(1, 5), rat(1, 4), rat(1, 3)]);
        for (x1, x2) in [(0, 0), (1, 2), (-3, 5)] {
            let (a, b) = (int(x1), int(x2));
            let pt = [a.clone(), b.clone()];
            let tf = rat(1, 5) + rat(1, 4) * int(2) * &a * &a + rat(1, 3) * int(2) * &b * &b;
            assert_eq!(dd.tilde_f[0].eval1(&pt, &int(0)).unwrap(), tf);
            let tg = rat(1, 2) * (int(2) * &a * &a - int(1)) + (int(2) * &b * &b - int(1));
            assert_eq!(dd.tilde_g.eval1(&pt, &int(0)).unwrap(), tg);
        }
    }

    #[test]
    fn candidate_examples() {
        let c = enumerate_candidates(&circle_problem(1));
        assert_eq!(c.len(), 3);
        assert!(c[0].set.is_empty());
        assert_eq!(c[1].sigma, vec![Sign::Plus]);
        assert_eq!(c[2].sigma, vec![Sign::Minus]);
        assert_eq!(enumerate_candidates(&circle_problem(0)).len(), 2);
        assert_eq!(enumerate_candidates(&generic_problem(2, 2, 1, 2)).len(), 6);
    }

    /// Independent count: brute force over all subsets and sign maps.
    fn brute_count(n: usize, m: usize, l: usize) -> usize {
        let mut total = 0;
        for mask in 0u32..(1 << m) {
            let set: Vec<usize> = (0..m).filter(|i| mask >> i & 1 == 1).collect();
            if set.len() > n {
                continue;
            }
            for smask in 0u32..(1 << set.len()) {
                let ok = set
                    .iter()
                    .enumerate()
                    .all(|(k, &i)| i < l || smask >> k & 1 == 0);
                if ok {
                    total += 1;
                }
            }
        }
        total
    }

    #[test]
    fn candidate_count_matches_formula() {
        for n in 2..=4 {
            for m in 0..=4 {
                for l in 0..=m {
                    let p = generic_problem(n, m, l, 2);
                    let c = enumerate_candidates(&p);
                    assert_eq!(c.len() as u64, candidate_count(n, m, l));
                    assert_eq!(c.len(), brute_count(n, m, l));
                    for cand in &c {
                        assert!(cand.set.iter().zip(&cand.sigma).all(|(&i, &s)| i < p.l || s == Sign::Plus));
                        assert_eq!(cand.d_s, bezout_bound(n, p.d, cand.s()));
                    }
                }
            }
        }
    }

    #[test]
    fn cauchy_entries_positive_and_minors_nonzero() {
        for n in 2..=6 {
            for m in 0..=6 {
                let p = generic_problem(n, m, 0, 2);
                let dd = build_deformation(&p);
                assert!(dd.q.windows(2).all(|w| w[0] < w[1]));
                let a = &dd.a;
                for row in a {
                    assert!(row.iter().all(|x| *x > Rat::zero()));
                }
                for i1 in 0..a.len() {
                    for i2 in i1 + 1..a.len() {
                        for j1 in 0..=n {
                            for j2 in j1 + 1..=n {
                                let det = &a[i1][j1] * &a[i2][j2] - &a[i1][j2] * &a[i2][j1];
                                assert!(!det.is_zero());
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn empty_candidate_system() {
        let p = circle_problem(1);
        let dd = build_deformation(&p);
        let c = &enumerate_candidates(&p)[0];
        let sys = build_deformed_system(&p, &dd, c);
        assert_eq!(sys.equations.len(), 2);
        // G_j = t dg/dx_j + (1 - t) d(tilde g)/dx_j
        let (t, x1, x2) = (rat(1, 3), int(2), int(-1));
        let vals = sys.system.eval(&[t.clone(), x1.clone(), x2.clone()], &int(0)).unwrap();
        let one_t = int(1) - &t;
        assert_eq!(vals[0], &t * int(1) + &one_t * rat(1, 2) * int(4) * &x1);
        assert_eq!(vals[1], &one_t * int(4) * &x2);
    }

    #[test]
    fn start_system_identity() {
        // at t = 0, G_j = T_d'(x_j) (a_0j - sum sigma_i a_ij lambda_i)
        let p = generic_problem(3, 2, 1, 4);
        let dd = build_deformation(&p);
        let dcheb = dd.cheb.derivative();
        for c in enumerate_candidates(&p) {
            let sys = build_deformed_system(&p, &dd, &c);
            let x = [rat(1, 2), int(-2), rat(3, 7)];
            let lam: Vec<Rat> = (0..c.s()).map(|k| rat(k as i64 + 2, 3)).collect();
            let mut pt = vec![int(0)];
            pt.extend(x.iter().cloned());
            pt.extend(lam.iter().cloned());
            let vals = sys.system.eval(&pt, &int(0)).unwrap();
            for j in 0..3 {
                let mut w = dd.a[0][j + 1].clone();
                for (k, &i) in c.set.iter().enumerate() {
                    w -= c.sigma[k].as_rat() * &dd.a[i + 1][j + 1] * &lam[k];
                }
                assert_eq!(vals[c.s() + j], dcheb.eval(&x[j]) * w);
            }
            // and F_i^sigma(0, x) = sigma_i tilde f_i(x)
            for (k, &i) in c.set.iter().enumerate() {
                let tf = dd.tilde_f[i].eval1(&x, &int(0)).unwrap();
                assert_eq!(vals[k], c.sigma[k].as_rat() * tf);
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(30))]

        #[test]
        fn endpoints_match_definitions(
            xs in prop::collection::vec((-6i64..=6, 1i64..=5), 3),
            ls in prop::collection::vec((-6i64..=6, 1i64..=5), 2),
        ) {
            let p = generic_problem(3, 2, 1, 2);
            let dd = build_deformation(&p);
            let x: Vec<Rat> = xs.iter().map(|&(a, b)| rat(a, b)).collect();
            for c in enumerate_candidates(&p) {
                let sys = build_deformed_system(&p, &dd, &c);
                let lag = lagrange_system(&p, &c);
                let lam: Vec<Rat> = ls.iter().take(c.s()).map(|&(a, b)| rat(a, b)).collect();
                let mut at1 = vec![int(1)];
                at1.extend(x.iter().cloned());
                at1.extend(lam.iter().cloned());
                let mut direct_pt = x.clone();
                direct_pt.extend(lam.iter().cloned());
                prop_assert_eq!(sys.system.eval(&at1, &int(0)).unwrap(), lag.eval(&direct_pt, &int(0)).unwrap());
                for (k, &i) in c.set.iter().enumerate() {
                    let fi = p.f[i].eval1(&x, &int(0)).unwrap();
                    prop_assert_eq!(sys.f_part()[k].eval1(&at1, &int(0)).unwrap(), fi);
                    if c.sigma[k] == Sign::Plus {
                        let mut at0 = at1.clone();
                        at0[0] = int(0);
                        let tf = dd.tilde_f[i].eval1(&x, &int(0)).unwrap();
                        prop_assert_eq!(sys.f_part()[k].eval1(&at0, &int(0)).unwrap(), tf);
                    }
                }
            }
        }
    }
}
