//! Seeded randomized campaigns over the inequalities and closed forms.
//!
//! Each trial draws its inputs from its own ChaCha stream (`seed`, trial
//! index), so results do not depend on the order trials are evaluated in.
//! Trials run in index order and the campaign stops at the first failure,
//! dumping the offending inputs.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, RngCore};
use serde::{Deserialize, Serialize};

use super::brute_force::{brute_force_lambda, SearchBudget, MAX_OPERATOR_DIM};
use super::random::{
    ginibre, haar_unitary, random_ball_element, random_hermitian, random_rank_one,
    random_unit_vector, trial_rng, BallPlacement,
};
use super::slack::{markus_singular_slack, markus_slack, mirsky_slack};
use crate::error::{Error, Result};
use crate::lambda::{
    lambda_operator_norm, lambda_trace_class, min_rank_one_distance, rank_one_distance, BallNorm,
};
use crate::linalg::{
    orthogonality_defect, rank_one, schatten_pow_from_values, singular_values, svd,
    ComplexMatrix, C64,
};

pub const MAX_CAMPAIGN_DIM: usize = 64;
/// Default lower bound on admissible slack.
pub const SLACK_TOL: f64 = 1e-9;
/// Largest `‖a·b*‖₂`/`‖b*·a‖₂` accepted for a constructed orthogonal pair.
pub const ORTHOGONALITY_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CampaignKind {
    Mirsky,
    Markus,
    MarkusSingular,
    LambdaTrace,
    LambdaOperator,
    MinRankOne,
    OrthogonalAdditivity,
}

impl CampaignKind {
    pub const ALL: [CampaignKind; 7] = [
        CampaignKind::Mirsky,
        CampaignKind::Markus,
        CampaignKind::MarkusSingular,
        CampaignKind::LambdaTrace,
        CampaignKind::LambdaOperator,
        CampaignKind::MinRankOne,
        CampaignKind::OrthogonalAdditivity,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CampaignKind::Mirsky => "mirsky",
            CampaignKind::Markus => "markus",
            CampaignKind::MarkusSingular => "markus-singular",
            CampaignKind::LambdaTrace => "lambda-trace",
            CampaignKind::LambdaOperator => "lambda-operator",
            CampaignKind::MinRankOne => "min-rank-one",
            CampaignKind::OrthogonalAdditivity => "orthogonal-additivity",
        }
    }
}

impl fmt::Display for CampaignKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CampaignKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CampaignKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown campaign kind `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CampaignConfig {
    pub kind: CampaignKind,
    pub n: usize,
    pub trials: u64,
    pub seed: u64,
    pub slack_tol: f64,
    /// Overrides the kind's deviation tolerance (1e-9 for identities, the
    /// search tolerance for the oracle kinds).
    pub dev_tol: Option<f64>,
    /// Search budget for the oracle kinds; its seed is replaced per trial.
    pub budget: SearchBudget,
    /// Sampled partial isometries per `min-rank-one` trial.
    pub samples: usize,
}

impl CampaignConfig {
    pub fn new(kind: CampaignKind, n: usize, trials: u64, seed: u64) -> Self {
        Self {
            kind,
            n,
            trials,
            seed,
            slack_tol: SLACK_TOL,
            dev_tol: None,
            budget: SearchBudget::default(),
            samples: 10_000,
        }
    }

    fn deviation_tol(&self) -> f64 {
        self.dev_tol.unwrap_or(match self.kind {
            CampaignKind::LambdaTrace | CampaignKind::LambdaOperator => self.budget.tolerance,
            _ => 1e-9,
        })
    }

    fn validate(&self) -> Result<()> {
        if self.n == 0 || self.n > MAX_CAMPAIGN_DIM {
            return Err(Error::InvalidParameter(format!(
                "dimension must lie in 1..={MAX_CAMPAIGN_DIM}, got {}",
                self.n
            )));
        }
        if self.trials == 0 {
            return Err(Error::InvalidParameter("at least one trial is required".into()));
        }
        if self.kind == CampaignKind::OrthogonalAdditivity && self.n < 2 {
            return Err(Error::InvalidParameter("orthogonal pairs need n ≥ 2".into()));
        }
        if self.kind == CampaignKind::LambdaOperator && self.n > MAX_OPERATOR_DIM {
            return Err(Error::InvalidParameter(format!(
                "the unitary search supports n ≤ {MAX_OPERATOR_DIM}, got {}",
                self.n
            )));
        }
        if self.kind == CampaignKind::MinRankOne && self.samples == 0 {
            return Err(Error::InvalidParameter("min-rank-one needs at least one sample".into()));
        }
        self.budget.validate()
    }
}

/// Per-trial result, one CSV row.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialRecord {
    pub trial: u64,
    pub slack: Option<f64>,
    pub deviation: Option<f64>,
    pub passed: bool,
}

/// Inputs of a failing trial in the matrix interchange format.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FailureDump {
    pub trial: u64,
    pub detail: String,
    pub slack: Option<f64>,
    pub deviation: Option<f64>,
    pub a: ComplexMatrix,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<ComplexMatrix>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CampaignSummary {
    pub kind: CampaignKind,
    pub n: usize,
    pub trials: u64,
    pub seed: u64,
    /// Smallest slack over all evaluated inequalities (absent for kinds
    /// that only check identities).
    pub min_slack: Option<f64>,
    /// Largest deviation from an identity or from the oracle midpoint.
    pub max_dev: Option<f64>,
    pub failures: Vec<FailureDump>,
    pub passed: bool,
    pub trials_run: u64,
    #[serde(skip)]
    pub records: Vec<TrialRecord>,
}

impl CampaignSummary {
    pub fn to_json_string(&self) -> String {
        serde_json::to_string(self).expect("summary serializes")
    }
}

struct TrialOutcome {
    slack: Option<f64>,
    deviation: Option<f64>,
    problem: Option<String>,
    a: ComplexMatrix,
    b: Option<ComplexMatrix>,
}

fn min_opt(acc: Option<f64>, x: Option<f64>) -> Option<f64> {
    match (acc, x) {
        (Some(a), Some(b)) => Some(a.min(b)),
        (a, b) => a.or(b),
    }
}

fn max_opt(acc: Option<f64>, x: Option<f64>) -> Option<f64> {
    match (acc, x) {
        (Some(a), Some(b)) => Some(a.max(b)),
        (a, b) => a.or(b),
    }
}

/// Runs a campaign and summarizes it.
pub fn run_campaign(cfg: &CampaignConfig) -> Result<CampaignSummary> {
    cfg.validate()?;
    let dev_tol = cfg.deviation_tol();
    let mut summary = CampaignSummary {
        kind: cfg.kind,
        n: cfg.n,
        trials: cfg.trials,
        seed: cfg.seed,
        min_slack: None,
        max_dev: None,
        failures: Vec::new(),
        passed: true,
        trials_run: 0,
        records: Vec::new(),
    };
    for trial in 0..cfg.trials {
        let out = run_trial(cfg, trial)?;
        let mut problem = out.problem;
        if problem.is_none() {
            if let Some(s) = out.slack.filter(|s| s.is_nan() || *s < -cfg.slack_tol) {
                problem = Some(format!("slack {s:e} below −{:e}", cfg.slack_tol));
            } else if let Some(d) = out.deviation.filter(|d| d.is_nan() || *d > dev_tol) {
                problem = Some(format!("deviation {d:e} above {dev_tol:e}"));
            }
        }
        summary.min_slack = min_opt(summary.min_slack, out.slack);
        summary.max_dev = max_opt(summary.max_dev, out.deviation);
        summary.trials_run += 1;
        summary.records.push(TrialRecord {
            trial,
            slack: out.slack,
            deviation: out.deviation,
            passed: problem.is_none(),
        });
        if let Some(detail) = problem {
            summary.passed = false;
            summary.failures.push(FailureDump {
                trial,
                detail,
                slack: out.slack,
                deviation: out.deviation,
                a: out.a,
                b: out.b,
            });
            break;
        }
    }
    Ok(summary)
}

fn run_trial(cfg: &CampaignConfig, trial: u64) -> Result<TrialOutcome> {
    let mut rng = trial_rng(cfg.seed, trial);
    let n = cfg.n;
    let real = trial % 2 == 1;
    let outcome = match cfg.kind {
        CampaignKind::Mirsky => {
            let (a, b) = (ginibre(&mut rng, n, n, real), ginibre(&mut rng, n, n, real));
            let mut slack = f64::INFINITY;
            for p in [1.0, 2.0, f64::INFINITY] {
                slack = slack.min(mirsky_slack(&a, &b, p)?.slack);
            }
            TrialOutcome { slack: Some(slack), deviation: None, problem: None, a, b: Some(b) }
        }
        CampaignKind::Markus => {
            let a = random_hermitian(&mut rng, n, real);
            let b = random_hermitian(&mut rng, n, real);
            let mut slack = f64::INFINITY;
            for p in [1.0, 2.0, 3.0] {
                slack = slack.min(markus_slack(&a, &b, p)?.slack);
            }
            TrialOutcome { slack: Some(slack), deviation: None, problem: None, a, b: Some(b) }
        }
        CampaignKind::MarkusSingular => {
            let (a, b) = (ginibre(&mut rng, n, n, real), ginibre(&mut rng, n, n, real));
            let mut slack = f64::INFINITY;
            let mut dev: f64 = 0.0;
            for p in [1.0, 2.0, 3.0] {
                let r = markus_singular_slack(&a, &b, p)?;
                slack = slack.min(r.slack);
                dev = dev.max(r.dilation_deviation.unwrap_or(f64::INFINITY));
            }
            TrialOutcome { slack: Some(slack), deviation: Some(dev), problem: None, a, b: Some(b) }
        }
        CampaignKind::LambdaTrace | CampaignKind::LambdaOperator => {
            let norm = if cfg.kind == CampaignKind::LambdaTrace { BallNorm::Trace } else { BallNorm::Operator };
            let a = random_ball_element(&mut rng, n, n, norm, real, BallPlacement::for_trial(trial));
            let budget = SearchBudget { seed: rng.next_u64(), ..cfg.budget };
            oracle_trial(a, norm, &budget)?
        }
        CampaignKind::MinRankOne => min_rank_one_trial(&mut rng, n, real, trial, cfg.samples)?,
        CampaignKind::OrthogonalAdditivity => orthogonal_trial(&mut rng, n)?,
    };
    Ok(outcome)
}

/// Compares the closed form with the brute-force bracket. The slack is the
/// signed distance of the closed form to the nearer bracket end.
fn oracle_trial(a: ComplexMatrix, norm: BallNorm, budget: &SearchBudget) -> Result<TrialOutcome> {
    let formula = match norm {
        BallNorm::Trace => lambda_trace_class(&a)?.value,
        BallNorm::Operator => lambda_operator_norm(&a)?.value,
    };
    let out = brute_force_lambda(&a, norm, budget)?;
    let slack = (formula - out.lower).min(out.upper - formula);
    let deviation = (formula - out.midpoint()).abs();
    let problem = if !out.conclusive {
        Some("search budget exhausted before the bracket closed".to_string())
    } else if out.width() > 2.0 * budget.tolerance {
        Some(format!("bracket width {:e} above {:e}", out.width(), 2.0 * budget.tolerance))
    } else {
        None
    };
    Ok(TrialOutcome { slack: Some(slack), deviation: Some(deviation), problem, a, b: None })
}

fn min_rank_one_trial<R: Rng>(
    rng: &mut R,
    n: usize,
    real: bool,
    trial: u64,
    samples: usize,
) -> Result<TrialOutcome> {
    let p = [1.0, 2.0, 3.0][(trial % 3) as usize];
    let g = ginibre(rng, n, n, real);
    let a = g.scale(rng.random_range(0.1..1.5) / singular_values(&g)[0]);
    let t = rng.random_range(0.05..2.0);
    let closed = min_rank_one_distance(&a, t, p)?;
    let deviation = (rank_one_distance(&a, &closed.argmin, t, p)? - closed.value).abs();
    let best = sampled_minimum(rng, &a, t, p, samples)?;
    Ok(TrialOutcome {
        slack: Some(best - closed.value),
        deviation: Some(deviation),
        problem: None,
        a,
        b: None,
    })
}

/// Smallest `‖a − t·e‖_p^p` over `samples` partial isometries: half drawn
/// uniformly, half perturbations of the top singular pair of `a` at random
/// scales.
pub fn sampled_minimum<R: Rng>(rng: &mut R, a: &ComplexMatrix, t: f64, p: f64, samples: usize) -> Result<f64> {
    let (m, n) = a.shape();
    let sys = svd(a)?;
    let mut best = f64::INFINITY;
    for k in 0..samples {
        let e = if k % 2 == 0 {
            random_rank_one(rng, m, n)
        } else {
            let scale = 10f64.powf(rng.random_range(-5.0..0.0));
            let perturb = |base: &[C64], rng: &mut R| -> Vec<C64> {
                let noise = random_unit_vector(rng, base.len());
                let v: Vec<C64> = base.iter().zip(&noise).map(|(x, z)| x + z * scale).collect();
                let nv = crate::linalg::vec_norm(&v);
                v.into_iter().map(|z| z / nv).collect()
            };
            let u = perturb(&sys.left[0], rng);
            let v = perturb(&sys.right[0], rng);
            rank_one(&u, &v)?
        };
        best = best.min(rank_one_distance(a, &e, t, p)?);
    }
    Ok(best)
}

fn orthogonal_trial<R: Rng>(rng: &mut R, n: usize) -> Result<TrialOutcome> {
    let u = haar_unitary(rng, n);
    let w = haar_unitary(rng, n);
    let split = rng.random_range(1..n);
    let mut da = vec![0.0; n];
    let mut db = vec![0.0; n];
    for k in 0..n {
        let s = rng.random_range(0.0..1.0);
        if k < split {
            da[k] = s;
        } else {
            db[k] = s;
        }
    }
    let conj = |d: &[f64]| -> ComplexMatrix {
        &(&u * &ComplexMatrix::from_diagonal(d).expect("n ≥ 1")) * &w.adjoint()
    };
    let (a, b) = (conj(&da), conj(&db));
    let defect = orthogonality_defect(&a, &b)?;
    let mut dev: f64 = 0.0;
    for p in [1.0, 2.0, 3.0] {
        let pa = schatten_pow_from_values(&singular_values(&a), p)?;
        let pb = schatten_pow_from_values(&singular_values(&b), p)?;
        for sign in [1.0, -1.0] {
            let ps = schatten_pow_from_values(&singular_values(&a.add_scaled(sign, &b)), p)?;
            dev = dev.max((ps - pa - pb).abs());
        }
    }
    let problem = (defect > ORTHOGONALITY_TOL)
        .then(|| format!("constructed pair has orthogonality defect {defect:e}"));
    Ok(TrialOutcome { slack: None, deviation: Some(dev), problem, a, b: Some(b) })
}
