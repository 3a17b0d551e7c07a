//! Direct numerical estimate of `λ(a)` from its definition.
//!
//! `t` is feasible when some extreme point `e` satisfies
//! `‖a − t·e‖ ≤ (1 − t)`, since then `y = (a − t·e)/(1 − t)` lies in the
//! ball. Feasibility is monotone in `t`, so `λ(a)` is located by bisection;
//! each feasibility question is answered by minimizing `‖a − t·e‖` over the
//! extreme points with seeded random restarts and a pattern search on local
//! charts. Nothing here uses the closed forms.

use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::random::{haar_unitary, random_unit_vector, trial_rng};
use crate::error::{Error, Result};
use crate::lambda::{AmenableTriplet, BallNorm, BALL_TOL};
use crate::linalg::{hermitian_eigen, singular_values, svd, vec_norm, ComplexMatrix, C64};

/// Largest dimension accepted for the search over unitaries.
pub const MAX_OPERATOR_DIM: usize = 3;

const INITIAL_STEP: f64 = 0.25;
const MIN_STEP: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SearchBudget {
    /// Random starting points per feasibility question, on top of the
    /// incumbent carried over from the previous bisection step.
    pub restarts: usize,
    /// Maximum number of polling rounds per local refinement.
    pub refinement_steps: usize,
    pub bisection_iters: usize,
    pub seed: u64,
    /// Target bracket half-width.
    pub tolerance: f64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        Self { restarts: 3, refinement_steps: 400, bisection_iters: 40, seed: 0, tolerance: 1e-3 }
    }
}

impl SearchBudget {
    pub fn with_seed(seed: u64) -> Self {
        Self { seed, ..Self::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if self.restarts == 0 || self.refinement_steps == 0 || self.bisection_iters == 0 {
            return Err(Error::InvalidParameter("search budget counts must be positive".into()));
        }
        if !(self.tolerance > 0.0 && self.tolerance.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "search tolerance must be positive, got {}",
                self.tolerance
            )));
        }
        Ok(())
    }
}

/// Bracket `[lower, upper]` around `λ(a)`.
///
/// `lower` is the largest weight for which an amenable triplet was found
/// (`best`); `upper` is one tolerance above the smallest weight the search
/// failed to certify, or 1 when no weight failed.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BruteForceOutcome {
    pub lower: f64,
    pub upper: f64,
    pub best: AmenableTriplet,
    /// False when the bisection ran out of iterations before the bracket
    /// closed to `2 · tolerance`.
    pub conclusive: bool,
    pub evaluations: u64,
}

impl BruteForceOutcome {
    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lower + self.upper)
    }

    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    /// Whether `value` lies in the bracket, allowing `slack` below `lower`
    /// for the ball-membership tolerance used during certification.
    pub fn contains(&self, value: f64, slack: f64) -> bool {
        self.lower - slack <= value && value <= self.upper
    }
}

/// Local coordinates on the set of extreme points.
trait Chart {
    type Point: Clone;

    fn random_point(&self, rng: &mut ChaCha8Rng) -> Self::Point;
    fn directions(&self) -> usize;
    fn step(&mut self, p: &Self::Point, dir: usize, sign: f64, h: f64) -> Self::Point;
    /// Continues the move `prev → cur` once more.
    fn extrapolate(&self, prev: &Self::Point, cur: &Self::Point) -> Self::Point;
    fn matrix(&self, p: &Self::Point) -> ComplexMatrix;
}

/// Rank-one partial isometries `u v*` on the product of unit spheres.
struct SphereChart {
    rows: usize,
    cols: usize,
}

fn normalized(mut v: Vec<C64>) -> Vec<C64> {
    let n = vec_norm(&v);
    for z in &mut v {
        *z /= n;
    }
    v
}

impl Chart for SphereChart {
    type Point = (Vec<C64>, Vec<C64>);

    fn random_point(&self, rng: &mut ChaCha8Rng) -> Self::Point {
        (random_unit_vector(rng, self.rows), random_unit_vector(rng, self.cols))
    }

    fn directions(&self) -> usize {
        2 * (self.rows + self.cols)
    }

    fn step(&mut self, p: &Self::Point, dir: usize, sign: f64, h: f64) -> Self::Point {
        let (mut u, mut v) = p.clone();
        let (target, k) = if dir < 2 * self.rows { (&mut u, dir) } else { (&mut v, dir - 2 * self.rows) };
        let delta = if k % 2 == 0 { C64::new(sign * h, 0.0) } else { C64::new(0.0, sign * h) };
        target[k / 2] += delta;
        (normalized(u), normalized(v))
    }

    fn extrapolate(&self, prev: &Self::Point, cur: &Self::Point) -> Self::Point {
        let ext = |a: &[C64], b: &[C64]| normalized(a.iter().zip(b).map(|(x, y)| y * 2.0 - x).collect());
        (ext(&prev.0, &cur.0), ext(&prev.1, &cur.1))
    }

    fn matrix(&self, p: &Self::Point) -> ComplexMatrix {
        let mut m = ComplexMatrix::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = p.0[i] * p.1[j].conj();
            }
        }
        m
    }
}

/// Unitaries, moved by right multiplication with `exp(i·h·B)` for `B` in an
/// orthonormal basis of the Hermitian matrices.
struct UnitaryChart {
    n: usize,
    basis: Vec<ComplexMatrix>,
    cached_h: f64,
    // moves[2*d] = exp(i h B_d), moves[2*d + 1] = exp(-i h B_d)
    moves: Vec<ComplexMatrix>,
}

impl UnitaryChart {
    fn new(n: usize) -> Self {
        let mut basis = Vec::with_capacity(n * n);
        let r = std::f64::consts::FRAC_1_SQRT_2;
        for k in 0..n {
            let mut b = ComplexMatrix::zeros(n, n);
            b[(k, k)] = C64::new(1.0, 0.0);
            basis.push(b);
        }
        for j in 0..n {
            for k in (j + 1)..n {
                let mut s = ComplexMatrix::zeros(n, n);
                s[(j, k)] = C64::new(r, 0.0);
                s[(k, j)] = C64::new(r, 0.0);
                basis.push(s);
                let mut a = ComplexMatrix::zeros(n, n);
                a[(j, k)] = C64::new(0.0, -r);
                a[(k, j)] = C64::new(0.0, r);
                basis.push(a);
            }
        }
        Self { n, basis, cached_h: f64::NAN, moves: Vec::new() }
    }

    fn refresh(&mut self, h: f64) {
        if self.cached_h == h {
            return;
        }
        self.moves = self
            .basis
            .iter()
            .flat_map(|b| [expi_hermitian(b, h), expi_hermitian(b, -h)])
            .collect();
        self.cached_h = h;
    }
}

/// `exp(i·θ·h)` for Hermitian `h`.
fn expi_hermitian(h: &ComplexMatrix, theta: f64) -> ComplexMatrix {
    let eig = hermitian_eigen(h).expect("basis elements are Hermitian");
    let n = h.rows();
    let mut out = ComplexMatrix::zeros(n, n);
    for (lam, v) in eig.values.iter().zip(&eig.vectors) {
        let phase = C64::from_polar(1.0, theta * lam);
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] += v[i] * phase * v[j].conj();
            }
        }
    }
    out
}

/// Modified Gram-Schmidt on the columns, undoing rounding drift.
fn reunitarize(mut u: ComplexMatrix) -> ComplexMatrix {
    let n = u.rows();
    for j in 0..n {
        for k in 0..j {
            let r: C64 = (0..n).map(|i| u[(i, k)].conj() * u[(i, j)]).sum();
            for i in 0..n {
                let q = u[(i, k)];
                u[(i, j)] -= q * r;
            }
        }
        let norm = (0..n).map(|i| u[(i, j)].norm_sqr()).sum::<f64>().sqrt();
        for i in 0..n {
            u[(i, j)] /= norm;
        }
    }
    u
}

impl Chart for UnitaryChart {
    type Point = ComplexMatrix;

    fn random_point(&self, rng: &mut ChaCha8Rng) -> ComplexMatrix {
        haar_unitary(rng, self.n)
    }

    fn directions(&self) -> usize {
        self.basis.len()
    }

    fn step(&mut self, p: &ComplexMatrix, dir: usize, sign: f64, h: f64) -> ComplexMatrix {
        self.refresh(h);
        let idx = 2 * dir + usize::from(sign < 0.0);
        reunitarize(p * &self.moves[idx])
    }

    fn extrapolate(&self, prev: &ComplexMatrix, cur: &ComplexMatrix) -> ComplexMatrix {
        // cur · (prev* cur); this roughly triples any loss of unitarity, so
        // the result is projected back
        reunitarize(cur * &(&prev.adjoint() * cur))
    }

    fn matrix(&self, p: &ComplexMatrix) -> ComplexMatrix {
        p.clone()
    }
}

struct Search<'a, C: Chart> {
    a: &'a ComplexMatrix,
    norm: BallNorm,
    chart: C,
    rng: ChaCha8Rng,
    budget: SearchBudget,
    /// Starting points tried before the random restarts.
    seeds: Vec<C::Point>,
    evaluations: u64,
}

impl<C: Chart> Search<'_, C> {
    fn objective(&mut self, t: f64, p: &C::Point) -> f64 {
        self.evaluations += 1;
        let diff = self.a.add_scaled(-t, &self.chart.matrix(p));
        let sv = singular_values(&diff);
        match self.norm {
            BallNorm::Trace => sv.iter().sum(),
            BallNorm::Operator => sv[0],
        }
    }

    /// Pattern search from `start`; stops early once the value is `≤ target`.
    fn refine(&mut self, t: f64, start: C::Point, target: f64) -> (C::Point, f64) {
        let mut x = start;
        let mut fx = self.objective(t, &x);
        let mut h = INITIAL_STEP;
        for _ in 0..self.budget.refinement_steps {
            if fx <= target {
                break;
            }
            let base = x.clone();
            let mut improved = false;
            for d in 0..self.chart.directions() {
                for sign in [1.0, -1.0] {
                    let y = self.chart.step(&x, d, sign, h);
                    let fy = self.objective(t, &y);
                    if fy < fx {
                        x = y;
                        fx = fy;
                        improved = true;
                        break;
                    }
                }
            }
            if improved {
                let z = self.chart.extrapolate(&base, &x);
                let fz = self.objective(t, &z);
                if fz < fx {
                    x = z;
                    fx = fz;
                }
                h = (h * 1.5).min(INITIAL_STEP);
            } else {
                h *= 0.5;
                if h < MIN_STEP {
                    break;
                }
            }
        }
        (x, fx)
    }

    /// Best point found for weight `t`, starting from the incumbent and
    /// `restarts` random points.
    fn minimize(&mut self, t: f64, incumbent: Option<&C::Point>, target: f64) -> (C::Point, f64) {
        let mut best: Option<(C::Point, f64)> = None;
        let fixed: Vec<C::Point> = incumbent.into_iter().cloned().chain(self.seeds.iter().cloned()).collect();
        let starts = fixed.len() + self.budget.restarts;
        for k in 0..starts {
            let start = match fixed.get(k) {
                Some(p) => p.clone(),
                None => self.chart.random_point(&mut self.rng),
            };
            let (p, f) = self.refine(t, start, target);
            if best.as_ref().is_none_or(|(_, bf)| f < *bf) {
                best = Some((p, f));
            }
            if f <= target {
                break;
            }
        }
        best.expect("at least one start")
    }

    fn run(mut self) -> BruteForceOutcome {
        let tol = self.budget.tolerance;
        let first = self.chart.random_point(&mut self.rng);
        let mut best = AmenableTriplet { t: 0.0, e: self.chart.matrix(&first), y: self.a.clone() };
        let mut lo = 0.0;
        let mut hi = 1.0;
        let mut failed = false;
        let mut incumbent: Option<C::Point> = None;
        for _ in 0..self.budget.bisection_iters {
            if hi - lo <= tol {
                break;
            }
            let t = 0.5 * (lo + hi);
            let target = (1.0 - t) * (1.0 + BALL_TOL);
            let (p, g) = self.minimize(t, incumbent.as_ref(), target);
            if g <= target {
                let e = self.chart.matrix(&p);
                let y = self.a.add_scaled(-t, &e).scale(1.0 / (1.0 - t));
                best = AmenableTriplet { t, e, y };
                lo = t;
            } else {
                hi = t;
                failed = true;
            }
            incumbent = Some(p);
        }
        let conclusive = hi - lo <= tol;
        let upper = if failed { (hi + tol).min(1.0) } else { 1.0 };
        BruteForceOutcome { lower: lo, upper, best, conclusive, evaluations: self.evaluations }
    }
}

/// Brackets `λ(a)` on the unit ball of `norm` by bisection over `t` and
/// direct minimization of `‖a − t·e‖` over extreme points `e`.
pub fn brute_force_lambda(
    a: &ComplexMatrix,
    norm: BallNorm,
    budget: &SearchBudget,
) -> Result<BruteForceOutcome> {
    budget.validate()?;
    let size = norm.norm(a);
    if size > 1.0 + BALL_TOL {
        return Err(Error::OutsideUnitBall { norm_name: norm.name(), norm: size });
    }
    let rng = trial_rng(budget.seed, 0);
    // Singular vectors of `a` give natural starting points: the rank-one
    // pairs for the trace norm and the polar unitary for the operator norm.
    // They only steer the search; every certificate is still evaluated
    // directly.
    let sys = svd(a)?;
    let outcome = match norm {
        BallNorm::Trace => {
            let seeds = sys.left.iter().zip(&sys.right).map(|(u, v)| (u.clone(), v.clone())).collect();
            Search {
                a,
                norm,
                chart: SphereChart { rows: a.rows(), cols: a.cols() },
                rng,
                budget: *budget,
                seeds,
                evaluations: 0,
            }
            .run()
        }
        BallNorm::Operator => {
            a.ensure_square()?;
            if a.rows() > MAX_OPERATOR_DIM {
                return Err(Error::InvalidParameter(format!(
                    "search over unitaries supports n ≤ {MAX_OPERATOR_DIM}, got {}",
                    a.rows()
                )));
            }
            let polar = (0..a.rows()).fold(ComplexMatrix::zeros(a.rows(), a.cols()), |acc, k| {
                acc.add_scaled(1.0, &crate::linalg::rank_one(&sys.left[k], &sys.right[k]).expect("unit vectors"))
            });
            Search {
                a,
                norm,
                chart: UnitaryChart::new(a.rows()),
                rng,
                budget: *budget,
                seeds: vec![reunitarize(polar)],
                evaluations: 0,
            }
            .run()
        }
    };
    Ok(outcome)
}
