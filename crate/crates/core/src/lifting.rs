//! From the start resolution at `t = 0` to a resolution of the critical
//! points at `t = 1`.
//!
//! The `D` start points are lifted together as one point over
//! `A = Q[u]/(p_0)`, with power series coefficients in `t`. The minimal
//! polynomial `P(t, u, y)` of `l = sum y_j x_j` is then read off from traces
//! of powers of `l`, to first order in `y - alpha`, rebuilt as a polynomial in
//! `t` by Pade approximation, and evaluated at `t = 1`.

use std::sync::Arc;

use num_traits::{One, Zero};

use crate::deformation::{build_deformed_system, Candidate, DeformationData, DeformedSystem};
use crate::error::{Error, Result, Stage};
use crate::exactring::{charpoly_from_power_sums, pade_reconstruct, Rat, Series, TruncSeries, UPoly};
use crate::geomres::GeomRes;
use crate::initsolve::initial_geomres;
use crate::linalg::det_adjugate;
use crate::problem::Problem;
use crate::ring::{Dual, QuotElem, Ring, TraceForm};

type Lifted = Series<QuotElem>;

/// The start points lifted to `t`-adic precision `kappa`.
#[derive(Clone, Debug)]
pub struct LiftedRes {
    /// Minimal polynomial of the start resolution; `A = Q[u]/(modulus)`.
    pub modulus: Arc<UPoly>,
    pub alpha: Vec<Rat>,
    /// Number of x-coordinates; the remaining entries of `v_t` are multipliers.
    pub x_count: usize,
    pub kappa: usize,
    /// One series over `A` per unknown.
    pub v_t: Vec<Lifted>,
    /// Coefficients of `u^0..u^D` of `P(t, u, alpha)`, monic.
    pub p_t: Vec<TruncSeries>,
    /// `y_derivs[j][h]`: coefficient of `u^h` in `dP/dy_j (t, u, alpha)`.
    /// Empty until [`newton_lift_y`] has run.
    pub y_derivs: Vec<Vec<TruncSeries>>,
}

impl LiftedRes {
    pub fn degree(&self) -> usize {
        self.modulus.deg0()
    }
}

/// `P(t, u, y)` with the denominators in `t` cleared, at `y = alpha` and to
/// first order around it.
#[derive(Clone, Debug, PartialEq)]
pub struct PhatData {
    /// `p_h(t, alpha)` for `h = 0..=D`, as polynomials in `t`.
    pub phat_coeffs: Vec<UPoly>,
    /// `phat_yderivs[j][h] = dp_h/dy_j (t, alpha)`.
    pub phat_yderivs: Vec<Vec<UPoly>>,
    /// Common denominator, normalized to `q(0) = 1`.
    pub q_t: UPoly,
}

fn quot(p: &UPoly, modulus: &Arc<UPoly>) -> QuotElem {
    QuotElem::new(p, modulus)
}

/// Evaluates the deformed system at `(t, x)`; returns values and Jacobian
/// with respect to `x`.
fn eval_with_jacobian(sys: &DeformedSystem, x: &[Lifted], order: usize) -> Result<(Vec<Lifted>, Vec<Vec<Lifted>>)> {
    let like = x[0].coeff(0).zero_like();
    let k = x.len();
    let t = Series::parameter(&like, order);
    let zero = Series::constant_series(like.clone(), order);
    let mut point = vec![Dual::lift(t, k)];
    for (j, xj) in x.iter().enumerate() {
        point.push(Dual::variable(xj.with_order(order), j, k));
    }
    let out = sys.system.eval(&point, &Dual::lift(zero, k))?;
    let values = out.iter().map(|o| o.re.clone()).collect();
    let jac = out.into_iter().map(|o| o.eps).collect();
    Ok((values, jac))
}

fn residual(sys: &DeformedSystem, x: &[Lifted], order: usize) -> Result<Vec<Lifted>> {
    let like = x[0].coeff(0).zero_like();
    let t = Series::parameter(&like, order);
    let mut point = vec![t];
    point.extend(x.iter().map(|xj| xj.with_order(order)));
    sys.system.eval(&point, &Series::constant_series(like, order))
}

/// Whether the lifted point solves the deformed system modulo `t^kappa`.
pub fn residual_vanishes(lifted: &LiftedRes, sys: &DeformedSystem) -> Result<bool> {
    if lifted.v_t.is_empty() {
        return Ok(true);
    }
    Ok(residual(sys, &lifted.v_t, lifted.kappa)?.iter().all(Ring::vanishes))
}

/// Monic `prod (u - l(W_i))` from the power sums `Tr(l^r)`.
fn charpoly_of<R: Ring, S: Ring>(l: &R, trace: impl Fn(&R) -> S, deg: usize) -> Vec<S> {
    let mut pw = l.one_like();
    let mut sums = vec![trace(&pw)];
    for _ in 1..=deg {
        pw = pw.times(l);
        sums.push(trace(&pw));
    }
    charpoly_from_power_sums(&sums, deg)
}

fn trace_series(tf: &TraceForm, s: &Lifted) -> TruncSeries {
    TruncSeries::from_rats(s.coeffs().iter().map(|c| tf.trace(c)).collect(), s.order())
}

/// Newton-Hensel lifting of the start resolution in `t` up to `t^kappa`,
/// doubling the precision at each step.
pub fn newton_lift_t(init: &GeomRes, sys: &DeformedSystem, kappa: usize) -> Result<LiftedRes> {
    let n_unknowns = sys.unknowns();
    if init.v.len() != n_unknowns {
        return Err(Error::InvalidInput(format!(
            "resolution has {} coordinates, system has {} unknowns",
            init.v.len(),
            n_unknowns
        )));
    }
    if kappa == 0 {
        return Err(Error::InvalidInput("precision must be positive".into()));
    }
    let modulus = Arc::new(init.p.clone());
    let mut x: Vec<Lifted> = init
        .v
        .iter()
        .map(|v| Series::constant_series(quot(v, &modulus), 1))
        .collect();
    if init.is_empty() {
        return Ok(LiftedRes {
            modulus,
            alpha: init.alpha.clone(),
            x_count: init.x_count,
            kappa,
            v_t: Vec::new(),
            p_t: vec![TruncSeries::constant_series(Rat::one(), kappa)],
            y_derivs: Vec::new(),
        });
    }

    let mut prec = 1;
    while prec < kappa {
        prec = (2 * prec).min(kappa);
        let (values, jac) = eval_with_jacobian(sys, &x, prec)?;
        let like = values[0].zero_like();
        let (det, adj) = det_adjugate(&jac, &like);
        let inv_det = det
            .inverse()
            .ok_or_else(|| Error::Lifting("Jacobian not invertible modulo the start polynomial".into()))?;
        x = x
            .iter()
            .enumerate()
            .map(|(i, xi)| {
                let step = adj[i]
                    .iter()
                    .zip(&values)
                    .fold(like.clone(), |acc, (a, f)| acc.plus(&a.times(f)));
                xi.with_order(prec).minus(&step.times(&inv_det))
            })
            .collect();
    }

    if !residual(sys, &x, kappa)?.iter().all(Ring::vanishes) {
        return Err(Error::Lifting(format!("residual does not vanish modulo t^{kappa}")));
    }

    let tf = TraceForm::new(&modulus);
    let like = x[0].zero_like();
    let l = x[..init.x_count]
        .iter()
        .zip(&init.alpha)
        .fold(like, |acc, (xj, a)| acc.plus(&xj.scaled(a)));
    let p_t = charpoly_of(&l, |s| trace_series(&tf, s), modulus.deg0());
    Ok(LiftedRes {
        modulus,
        alpha: init.alpha.clone(),
        x_count: init.x_count,
        kappa,
        v_t: x,
        p_t,
        y_derivs: Vec::new(),
    })
}

/// First-order data in `y` around `alpha`: the characteristic polynomial of
/// `l = sum (alpha_j + e_j) x_j` over dual numbers.
pub fn newton_lift_y(lifted: &LiftedRes, alpha: &[Rat]) -> Result<LiftedRes> {
    let n = lifted.x_count;
    if alpha.len() != n {
        return Err(Error::InvalidInput("form has the wrong number of coefficients".into()));
    }
    let mut out = lifted.clone();
    if lifted.v_t.is_empty() {
        out.y_derivs = vec![Vec::new(); n];
        return Ok(out);
    }
    let like = lifted.v_t[0].zero_like();
    let l = lifted.v_t[..n]
        .iter()
        .enumerate()
        .fold(Dual::lift(like.clone(), n), |acc, (j, xj)| {
            let mut eps = vec![like.clone(); n];
            eps[j] = xj.clone();
            acc.plus(&Dual::new(xj.scaled(&alpha[j]), eps))
        });
    let tf = TraceForm::new(&lifted.modulus);
    let coeffs = charpoly_of(&l, |d: &Dual<Lifted>| d.map(|s| trace_series(&tf, s)), lifted.degree());
    let start = UPoly::new(coeffs.iter().map(|c| c.re.coeff(0).clone()).collect());
    if !start.is_squarefree() {
        return Err(Error::Separation("linear form does not separate the start points".into()));
    }
    out.alpha = alpha.to_vec();
    out.p_t = coeffs.iter().map(|c| c.re.clone()).collect();
    out.y_derivs = (0..n)
        .map(|j| coeffs.iter().map(|c| c.eps[j].clone()).collect())
        .collect();
    Ok(out)
}

fn lcm(a: &UPoly, b: &UPoly) -> Result<UPoly> {
    let g = UPoly::gcd(a, b)?;
    Ok(&a.exact_div(&g)? * b)
}

/// Pade reconstruction of every coefficient with numerator and denominator
/// degrees at most `n D`, over one common denominator.
pub fn reconstruct_phat(lifted: &LiftedRes) -> Result<PhatData> {
    let deg = lifted.degree();
    let bound = lifted.x_count * deg;
    if lifted.kappa < 2 * bound + 1 {
        return Err(Error::InvalidInput(format!(
            "precision {} below the required {}",
            lifted.kappa,
            2 * bound + 1
        )));
    }
    if lifted.y_derivs.len() != lifted.x_count {
        return Err(Error::InvalidInput("first-order data in y is missing".into()));
    }
    let mut fracs: Vec<(UPoly, UPoly)> = Vec::new();
    let series = lifted.p_t[..deg]
        .iter()
        .chain(lifted.y_derivs.iter().flat_map(|d| d[..deg].iter()));
    for s in series {
        fracs.push(pade_reconstruct(s, bound, bound)?);
    }
    let mut q = UPoly::one();
    for (_, den) in &fracs {
        q = lcm(&q, den)?;
    }
    let q0 = q.coeff(0);
    if q0.is_zero() {
        return Err(Error::Invariant("denominator vanishes at t = 0".into()));
    }
    let q = q.scale(&q0.recip());
    if q.deg0() > bound {
        return Err(Error::Reconstruction(format!(
            "common denominator has degree {} > {bound}",
            q.deg0()
        )));
    }
    let lift = |(num, den): &(UPoly, UPoly)| -> Result<UPoly> { Ok(num * &q.exact_div(den)?) };
    let mut phat_coeffs = fracs[..deg].iter().map(lift).collect::<Result<Vec<_>>>()?;
    phat_coeffs.push(q.clone());
    let phat_yderivs = fracs[deg..]
        .chunks(deg.max(1))
        .take(lifted.x_count)
        .map(|chunk| {
            let mut row = chunk.iter().map(lift).collect::<Result<Vec<_>>>()?;
            row.truncate(deg);
            row.push(UPoly::zero());
            Ok(row)
        })
        .collect::<Result<Vec<_>>>()?;
    let phat_yderivs = if deg == 0 {
        vec![vec![UPoly::zero()]; lifted.x_count]
    } else {
        phat_yderivs
    };
    Ok(PhatData {
        phat_coeffs,
        phat_yderivs,
        q_t: q,
    })
}

/// Evaluates at `t = 1` and strips multiple roots.
pub fn specialize_t1(ph: &PhatData, alpha: &[Rat]) -> Result<GeomRes> {
    let at_one = |coeffs: &[UPoly]| UPoly::new(coeffs.iter().map(|c| c.eval(&Rat::one())).collect());
    let n = alpha.len();
    let big_p = at_one(&ph.phat_coeffs);
    if big_p.is_zero() {
        return Err(Error::DegenerateSpecialization(
            "P vanishes identically at t = 1".into(),
        ));
    }
    if big_p.is_constant() {
        return Ok(GeomRes::empty(n, alpha));
    }
    let dp = big_p.derivative();
    let shared = UPoly::gcd(&big_p, &dp)?;
    let p = big_p.exact_div(&shared)?.monic();
    let den = dp.exact_div(&shared)?;
    let nums = ph
        .phat_yderivs
        .iter()
        .map(|row| {
            at_one(row)
                .exact_div(&shared)
                .map(|y| -&y)
                .map_err(|_| Error::Genericity {
                    stage: Stage::Specialization,
                    reason: "derivative in y not divisible by the repeated part".into(),
                })
        })
        .collect::<Result<Vec<_>>>()?;
    let v = UPoly::divide_mod(&nums, &den, &p)
        .ok_or_else(|| Error::Invariant("derivative not invertible modulo a squarefree p".into()))?;
    Ok(GeomRes {
        p,
        v,
        alpha: alpha.to_vec(),
        x_count: n,
    })
}

/// Intermediate results of one pipeline run, kept for inspection.
#[derive(Clone, Debug)]
pub struct Trace {
    pub initial: GeomRes,
    pub lifted: LiftedRes,
    pub phat: PhatData,
    pub residual_vanishes: bool,
}

/// Resolution of a finite set containing the projections of the critical
/// points for candidate `c`, with only the x-coordinates kept.
pub fn geometric_resolution(p: &Problem, dd: &DeformationData, c: &Candidate, alpha: &[Rat]) -> Result<GeomRes> {
    geometric_resolution_traced(p, dd, c, alpha).map(|(r, _)| r)
}

pub fn geometric_resolution_traced(
    p: &Problem,
    dd: &DeformationData,
    c: &Candidate,
    alpha: &[Rat],
) -> Result<(GeomRes, Trace)> {
    let initial = initial_geomres(p, dd, c, alpha).map_err(|e| e.at_stage(Stage::InitialResolution))?;
    let sys = build_deformed_system(p, dd, c);
    let kappa = 2 * p.n * c.d_s + 1;
    let lifted = newton_lift_t(&initial, &sys, kappa).map_err(|e| e.at_stage(Stage::Lifting))?;
    let lifted = newton_lift_y(&lifted, alpha).map_err(|e| e.at_stage(Stage::Lifting))?;
    let residual_vanishes = residual_vanishes(&lifted, &sys)?;
    let phat = reconstruct_phat(&lifted).map_err(|e| e.at_stage(Stage::Reconstruction))?;
    let res = specialize_t1(&phat, alpha).map_err(|e| e.at_stage(Stage::Specialization))?;
    res.validate().map_err(|e| e.at_stage(Stage::Verification))?;
    Ok((
        res,
        Trace {
            initial,
            lifted,
            phat,
            residual_vanishes,
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::deformation::{build_deformation, enumerate_candidates};
    use crate::exactring::{int, rat};
    use crate::mpoly::MPoly;
    use crate::slp::{Slp, SlpBuilder};
    use proptest::prelude::*;

    /// A system over inputs `(t, x_1..x_n)` with no multipliers.
    fn system(n: usize, build: impl Fn(&mut SlpBuilder) -> Vec<crate::slp::Node>) -> DeformedSystem {
        let mut b = SlpBuilder::new(1 + n);
        let outs = build(&mut b);
        let system = b.build(&outs);
        let equations: Vec<Slp> = (0..n).map(|i| system.select(&[i])).collect();
        DeformedSystem {
            n,
            s: 0,
            equations,
            system,
        }
    }

    /// `x^2 - (1 + t)`.
    fn sqrt_model() -> DeformedSystem {
        system(1, |b| {
            let (t, x) = (b.input(0), b.input(1));
            let xx = b.mul(x, x);
            let one = b.constant(int(1));
            let rhs = b.add(one, t);
            vec![b.sub(xx, rhs)]
        })
    }

    fn coeffs_at_point(s: &Lifted) -> Vec<Rat> {
        s.coeffs().iter().map(|c| c.rep().coeff(0)).collect()
    }

    #[test]
    fn binomial_series() {
        let init = GeomRes::point(&[int(1)], &[int(1)]);
        let lifted = newton_lift_t(&init, &sqrt_model(), 4).unwrap();
        assert_eq!(
            coeffs_at_point(&lifted.v_t[0]),
            vec![int(1), rat(1, 2), rat(-1, 8), rat(1, 16)]
        );
        assert!(residual_vanishes(&lifted, &sqrt_model()).unwrap());
    }

    #[test]
    fn order_one_keeps_start() {
        let init = GeomRes::point(&[int(1)], &[int(1)]);
        let lifted = newton_lift_t(&init, &sqrt_model(), 1).unwrap();
        assert_eq!(lifted.v_t[0].order(), 1);
        assert_eq!(lifted.v_t[0].coeff(0).rep(), &UPoly::one());
    }

    fn two_roots() -> GeomRes {
        GeomRes {
            p: UPoly::from_ints(&[-1, 0, 1]),
            v: vec![UPoly::var()],
            alpha: vec![int(1)],
            x_count: 1,
        }
    }

    #[test]
    fn sqrt_model_reconstructs_polynomial() {
        let sys = sqrt_model();
        let lifted = newton_lift_t(&two_roots(), &sys, 5).unwrap();
        let start = UPoly::new(lifted.p_t.iter().map(|c| c.coeff(0).clone()).collect());
        assert_eq!(start, two_roots().p);
        let lifted = newton_lift_y(&lifted, &[int(1)]).unwrap();
        let ph = reconstruct_phat(&lifted).unwrap();
        assert_eq!(ph.q_t, UPoly::one());
        assert_eq!(
            ph.phat_coeffs,
            vec![UPoly::from_ints(&[-1, -1]), UPoly::zero(), UPoly::one()]
        );
        // P = u^2 - y^2 (1 + t)
        assert_eq!(ph.phat_yderivs[0][0], UPoly::from_ints(&[-2, -2]));
        let res = specialize_t1(&ph, &[int(1)]).unwrap();
        assert_eq!(res.p, UPoly::from_ints(&[-2, 0, 1]));
        assert_eq!(res.v[0], UPoly::var());
    }

    /// `x_1^2 - 1, x_2`, independent of `t`.
    fn symmetric_pair() -> (DeformedSystem, GeomRes) {
        let sys = system(2, |b| {
            let (x1, x2) = (b.input(1), b.input(2));
            let sq = b.mul(x1, x1);
            let one = b.constant(int(1));
            vec![b.sub(sq, one), x2]
        });
        let init = GeomRes {
            p: UPoly::from_ints(&[-1, 0, 1]),
            v: vec![UPoly::var(), UPoly::zero()],
            alpha: vec![int(1), int(0)],
            x_count: 2,
        };
        (sys, init)
    }

    #[test]
    fn first_order_data_of_symmetric_pair() {
        let (sys, init) = symmetric_pair();
        let lifted = newton_lift_t(&init, &sys, 3).unwrap();
        let lifted = newton_lift_y(&lifted, &init.alpha).unwrap();
        // P = u^2 - y_1^2, so dP/dy_1 = -2 y_1 and dP/dy_2 = 0
        let at0 = |s: &TruncSeries| s.coeff(0).clone();
        let p: Vec<Rat> = lifted.p_t.iter().map(at0).collect();
        assert_eq!(p, vec![int(-1), int(0), int(1)]);
        let d1: Vec<Rat> = lifted.y_derivs[0].iter().map(at0).collect();
        assert_eq!(d1, vec![int(-2), int(0), int(0)]);
        assert!(lifted.y_derivs[1].iter().all(Ring::vanishes));
        for c in lifted.p_t.iter().chain(lifted.y_derivs.iter().flatten()) {
            assert!(c.coeffs()[1..].iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn zero_form_is_rejected() {
        let (sys, init) = symmetric_pair();
        let lifted = newton_lift_t(&init, &sys, 3).unwrap();
        let err = newton_lift_y(&lifted, &[int(0), int(0)]).unwrap_err();
        assert!(matches!(err, Error::Separation(_)));
    }

    #[test]
    fn single_point_first_order_data() {
        let sys = system(2, |b| {
            let (x1, x2) = (b.input(1), b.input(2));
            let (c1, c2) = (b.constant(int(3)), b.constant(int(-2)));
            vec![b.sub(x1, c1), b.sub(x2, c2)]
        });
        let alpha = vec![int(5), int(7)];
        let init = GeomRes::point(&[int(3), int(-2)], &alpha);
        let lifted = newton_lift_y(&newton_lift_t(&init, &sys, 5).unwrap(), &alpha).unwrap();
        assert_eq!(lifted.y_derivs[0][0].coeff(0), &int(-3));
        assert_eq!(lifted.y_derivs[1][0].coeff(0), &int(2));
        let res = specialize_t1(&reconstruct_phat(&lifted).unwrap(), &alpha).unwrap();
        assert_eq!(res, init);
    }

    fn constant_rows(rows: &[&[i64]]) -> Vec<UPoly> {
        rows.iter().map(|r| UPoly::from_ints(r)).collect()
    }

    #[test]
    fn specialize_examples() {
        // P = u^2 - y_1^2 at alpha = (1, 0)
        let ph = PhatData {
            phat_coeffs: constant_rows(&[&[-1], &[], &[1]]),
            phat_yderivs: vec![constant_rows(&[&[-2], &[], &[]]), constant_rows(&[&[], &[], &[]])],
            q_t: UPoly::one(),
        };
        let res = specialize_t1(&ph, &[int(1), int(0)]).unwrap();
        assert_eq!(res.p, UPoly::from_ints(&[-1, 0, 1]));
        assert_eq!(res.v, vec![UPoly::var(), UPoly::zero()]);

        // (u - 1)^2 (u - 2): the double root is stripped
        let ph = PhatData {
            phat_coeffs: constant_rows(&[&[-2], &[5], &[-4], &[1]]),
            phat_yderivs: vec![constant_rows(&[&[], &[], &[], &[]])],
            q_t: UPoly::one(),
        };
        let res = specialize_t1(&ph, &[int(1)]).unwrap();
        assert_eq!(res.p, UPoly::from_ints(&[2, -3, 1]));

        let ph = PhatData {
            phat_coeffs: vec![UPoly::from_ints(&[1, -1]), UPoly::from_ints(&[-1, 1])],
            phat_yderivs: vec![vec![UPoly::zero(), UPoly::zero()]],
            q_t: UPoly::from_ints(&[1, -1]),
        };
        assert!(matches!(
            specialize_t1(&ph, &[int(1)]),
            Err(Error::DegenerateSpecialization(_))
        ));
    }

    /// min x1^2 + x2^2 subject to x1 + x2 - 1 = 0.
    fn line_problem() -> Problem {
        let x = |j| MPoly::var(2, j);
        let g = &x(0).pow(2) + &x(1).pow(2);
        let f = &(&x(0) + &x(1)) - &MPoly::constant(2, int(1));
        Problem::from_polys(&[f], 1, &g, None).unwrap()
    }

    fn contains(res: &GeomRes, point: &[Rat]) -> bool {
        let u: Rat = res.alpha.iter().zip(point).map(|(a, x)| a * x).sum();
        res.p.eval(&u).is_zero() && res.v.iter().zip(point).all(|(v, x)| &v.eval(&u) == x)
    }

    #[test]
    fn line_problem_candidates() {
        let p = line_problem();
        let dd = build_deformation(&p);
        let alpha = vec![int(3), int(-11)];
        let cands = enumerate_candidates(&p);
        let (free, trace) = geometric_resolution_traced(&p, &dd, &cands[0], &alpha).unwrap();
        assert!(trace.residual_vanishes);
        assert!(contains(&free, &[int(0), int(0)]));
        let (on_line, trace) = geometric_resolution_traced(&p, &dd, &cands[1], &alpha).unwrap();
        assert!(trace.residual_vanishes);
        assert_eq!(trace.lifted.kappa, 2 * 2 * 4 + 1);
        assert!(contains(&on_line, &[rat(1, 2), rat(1, 2)]));
        assert!(on_line.is_valid());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(6))]
        #[test]
        fn lifted_points_solve_the_deformed_system(a in -50i64..50, b in -50i64..50) {
            prop_assume!(a != 0 && b != 0 && a != b && a != -b);
            let p = line_problem();
            let dd = build_deformation(&p);
            let c = &enumerate_candidates(&p)[1];
            match geometric_resolution_traced(&p, &dd, c, &[int(a), int(b)]) {
                Ok((res, trace)) => {
                    prop_assert!(trace.residual_vanishes);
                    prop_assert!(contains(&res, &[rat(1, 2), rat(1, 2)]));
                }
                Err(e) => prop_assert!(e.is_retryable(), "{e}"),
            }
        }
    }
}
