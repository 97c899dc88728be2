//! Independent check of a solver result: interval arithmetic at the
//! reported points and a random search for better feasible points.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::exactring::{rat, rat_to_f64, Rat};
use crate::linalg;
use crate::optimizer::MinimizerFamily;
use crate::problem::Problem;
use crate::realalg::Interval;
use crate::slp::Slp;

/// Stream of the run generator reserved for sampling.
pub const SAMPLE_STREAM: u64 = 1;

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    /// Feasible points to draw.
    pub samples: usize,
    /// Sampling box `[lo, hi]` in every coordinate; inferred when absent.
    pub bounds: Option<(f64, f64)>,
    pub seed: u64,
    /// Minimum value to test against; defaults to the family's own value.
    pub claimed_min: Option<f64>,
    pub tolerance: f64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            samples: 100_000,
            bounds: None,
            seed: 0,
            claimed_min: None,
            tolerance: 1e-9,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PointCheck {
    pub point: Vec<f64>,
    pub value: f64,
    pub feasible: bool,
    pub stationary: bool,
    pub value_matches_claim: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Violation {
    pub point: Vec<f64>,
    pub value: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub claimed_min: f64,
    pub points: Vec<PointCheck>,
    pub box_lo: Vec<f64>,
    pub box_hi: Vec<f64>,
    /// Set when the sampling box was guessed rather than given.
    pub sampling_box_heuristic: bool,
    pub draws: usize,
    pub feasible_samples: usize,
    pub violation_count: usize,
    /// The first few violating samples.
    pub violations: Vec<Violation>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.violation_count == 0 && self.points.iter().all(|p| p.feasible && p.stationary && p.value_matches_claim)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("claimed minimum: {}\n", self.claimed_min);
        for (k, p) in self.points.iter().enumerate() {
            out.push_str(&format!(
                "point {}: {:?} g = {} feasible={} stationary={} value-matches={}\n",
                k + 1,
                p.point,
                p.value,
                p.feasible,
                p.stationary,
                p.value_matches_claim
            ));
        }
        if self.sampling_box_heuristic {
            out.push_str("sampling box heuristic: box inferred from the reported points\n");
        }
        out.push_str(&format!(
            "box [{:?}, {:?}], {} draws, {} feasible samples, {} violations\n",
            self.box_lo, self.box_hi, self.draws, self.feasible_samples, self.violation_count
        ));
        for v in &self.violations {
            out.push_str(&format!("  violation at {:?}: g = {}\n", v.point, v.value));
        }
        out.push_str(if self.passed() { "PASS\n" } else { "FAIL\n" });
        out
    }
}

fn eval_f64(s: &Slp, x: &[f64]) -> Vec<f64> {
    s.eval(x, &0.0).expect("arity checked by the problem")
}

/// Solves a small dense system by elimination with partial pivoting.
fn solve_f64(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for c in 0..n {
        let piv = (c..n).max_by(|&i, &j| a[i][c].abs().total_cmp(&a[j][c].abs()))?;
        if a[piv][c].abs() < 1e-300 {
            return None;
        }
        a.swap(c, piv);
        b.swap(c, piv);
        for r in c + 1..n {
            let f = a[r][c] / a[c][c];
            for k in c..n {
                a[r][k] -= f * a[c][k];
            }
            b[r] -= f * b[c];
        }
    }
    let mut x = vec![0.0; n];
    for r in (0..n).rev() {
        let s: f64 = (r + 1..n).map(|k| a[r][k] * x[k]).sum();
        x[r] = (b[r] - s) / a[r][r];
    }
    Some(x)
}

/// Minimum-norm Gauss-Newton steps onto `{f = 0}`.
fn project(grads: &[Slp], x: &mut [f64]) -> bool {
    for _ in 0..50 {
        let evals: Vec<Vec<f64>> = grads.iter().map(|g| eval_f64(g, x)).collect();
        let r: Vec<f64> = evals.iter().map(|e| e[0]).collect();
        if r.iter().all(|v| v.abs() <= 1e-13) {
            return true;
        }
        if r.iter().any(|v| !v.is_finite()) {
            return false;
        }
        let jac: Vec<&[f64]> = evals.iter().map(|e| &e[1..]).collect();
        let jjt: Vec<Vec<f64>> = jac
            .iter()
            .map(|a| jac.iter().map(|b| a.iter().zip(*b).map(|(p, q)| p * q).sum()).collect())
            .collect();
        let Some(y) = solve_f64(jjt, r) else { return false };
        for (j, xj) in x.iter_mut().enumerate() {
            *xj -= jac.iter().zip(&y).map(|(row, yk)| row[j] * yk).sum::<f64>();
        }
    }
    false
}

/// `k`-subsets of `0..n`.
fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Every maximal minor of `[grad g | grad f_i]` encloses zero, i.e. the
/// gradients may be linearly dependent at the point.
fn stationary(problem: &Problem, active: &[usize], point: &[Interval]) -> bool {
    let n = problem.n;
    let cols = active.len() + 1;
    if cols > n {
        return true;
    }
    let like = Interval::point(Rat::zero());
    let grad = |s: &Slp| -> Vec<Interval> {
        let mut out = s.gradient().expect("single output").eval(point, &like).expect("arity");
        out.remove(0);
        out
    };
    let mut columns = vec![grad(&problem.g)];
    columns.extend(active.iter().map(|&i| grad(&problem.f[i])));
    subsets(n, cols).into_iter().all(|rows| {
        let m: Vec<Vec<Interval>> = rows.iter().map(|&r| columns.iter().map(|c| c[r].clone()).collect()).collect();
        linalg::det(&m, &like).contains_zero()
    })
}

pub fn oracle_verify(problem: &Problem, fam: &MinimizerFamily, opts: &VerifyOptions) -> VerifyReport {
    let width = rat(1, 1 << 30) * rat(1, 1 << 30);
    let like = Interval::point(Rat::zero());
    let mut points = Vec::new();
    let mut boxes = Vec::new();
    let mut own_min = f64::INFINITY;
    for e in &fam.entries {
        let Ok(pt) = e.point_enclosure(&width) else {
            points.push(PointCheck {
                point: Vec::new(),
                value: f64::NAN,
                feasible: false,
                stationary: false,
                value_matches_claim: false,
            });
            continue;
        };
        let feasible = problem.f.iter().enumerate().all(|(i, f)| {
            let v = f.eval1(&pt, &like).expect("arity");
            if i < problem.l {
                v.contains_zero()
            } else {
                v.hi >= Rat::zero()
            }
        });
        let value = problem.g.eval1(&pt, &like).expect("arity");
        let value_f = rat_to_f64(&value.midpoint());
        own_min = own_min.min(value_f);
        points.push(PointCheck {
            point: pt.iter().map(Interval::mid_f64).collect(),
            value: value_f,
            feasible,
            stationary: stationary(problem, &e.candidate.set, &pt),
            value_matches_claim: true,
        });
        boxes.push(pt);
    }
    let claimed = opts.claimed_min.unwrap_or(own_min);
    for p in &mut points {
        p.value_matches_claim = (p.value - claimed).abs() <= opts.tolerance;
    }

    let n = problem.n;
    let (lo, hi, heuristic) = match opts.bounds {
        Some((a, b)) => (vec![a; n], vec![b; n], false),
        None => {
            let centers: Vec<&PointCheck> = points.iter().filter(|p| p.point.len() == n).collect();
            let radius = 1.0
                + 2.0 * centers
                    .iter()
                    .flat_map(|p| p.point.iter().map(|x| x.abs()))
                    .fold(0.0, f64::max);
            let mid: Vec<f64> = (0..n)
                .map(|j| {
                    if centers.is_empty() {
                        0.0
                    } else {
                        centers.iter().map(|p| p.point[j]).sum::<f64>() / centers.len() as f64
                    }
                })
                .collect();
            (
                mid.iter().map(|m| m - radius).collect(),
                mid.iter().map(|m| m + radius).collect(),
                true,
            )
        }
    };

    let eq_grads: Vec<Slp> = problem.f[..problem.l]
        .iter()
        .map(|f| f.gradient().expect("single output"))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    rng.set_stream(SAMPLE_STREAM);
    let max_draws = opts.samples.saturating_mul(200).max(1000);
    let (mut draws, mut feasible_samples, mut violation_count) = (0, 0, 0);
    let mut violations = Vec::new();
    while feasible_samples < opts.samples && draws < max_draws {
        draws += 1;
        let mut x: Vec<f64> = (0..n).map(|j| rng.gen_range(lo[j]..=hi[j])).collect();
        if !eq_grads.is_empty() && !project(&eq_grads, &mut x) {
            continue;
        }
        if problem.f[problem.l..].iter().any(|f| !(eval_f64(f, &x)[0] >= 0.0)) {
            continue;
        }
        feasible_samples += 1;
        let gx = eval_f64(&problem.g, &x)[0];
        if gx < claimed - opts.tolerance {
            violation_count += 1;
            if violations.len() < 10 {
                violations.push(Violation { point: x, value: gx });
            }
        }
    }
    VerifyReport {
        claimed_min: claimed,
        points,
        box_lo: lo,
        box_hi: hi,
        sampling_box_heuristic: heuristic,
        draws,
        feasible_samples,
        violation_count,
        violations,
    }
}
