//! Acceptance suite. Runs every criterion at its stated tolerance, prints
//! one PASS/FAIL line each and exits non-zero if any criterion fails.
//!
//! Run alone with `cargo test -p schatten-lambda --test acceptance`.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::Rng;
use schatten_lambda::lambda::{
    attaining_decomposition, counterexample_sequence, lambda_ell1, lambda_operator_norm,
    lambda_trace_class, BallNorm,
};
use schatten_lambda::linalg::{
    hermitian_eigenvalues, rank_one, singular_values, svd, trace_norm, wielandt_dilation,
    ComplexMatrix, C64,
};
use schatten_lambda::oracle::random::{
    ginibre, random_ball_element, random_rank_one, random_unit_vector, trial_rng, BallPlacement,
};
use schatten_lambda::oracle::{
    amenability_check, brute_force_lambda, run_campaign, CampaignConfig, CampaignKind,
    CampaignSummary, SearchBudget, AMENABILITY_TOL,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, Duration, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn campaign(kind: CampaignKind, n: usize, trials: u64, seed: u64) -> Result<CampaignSummary, String> {
    let s = run_campaign(&CampaignConfig::new(kind, n, trials, seed)).map_err(|e| e.to_string())?;
    match s.failures.first() {
        None => Ok(s),
        Some(f) => Err(format!("{kind} n={n} trial {}: {}", f.trial, f.detail)),
    }
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map_or_else(|| "-".to_string(), |v| format!("{v:.3e}"))
}

fn oracle_vs_formula() -> Outcome {
    let mut min_slack = f64::INFINITY;
    for n in [2, 3, 4] {
        let s = campaign(CampaignKind::LambdaTrace, n, 100, 1000 + n as u64)?;
        min_slack = min_slack.min(s.min_slack.unwrap_or(f64::INFINITY));
        for r in &s.records {
            ensure(r.slack.is_some_and(|v| v >= -1e-9), || format!("n={n} trial {} outside bracket", r.trial))?;
        }
    }
    // bracket widths above 2e-3 fail inside the campaign
    Ok(format!("300 matrices, min containment margin {min_slack:.3e}, every width ≤ 2e-3"))
}

fn attained_witness() -> Outcome {
    let mut worst_residual: f64 = 0.0;
    let mut worst_norm_gap: f64 = 0.0;
    for trial in 0..1000u64 {
        let mut rng = trial_rng(2, trial);
        let n = 1 + (trial % 6) as usize;
        let a = random_ball_element(&mut rng, n, n, BallNorm::Trace, trial % 2 == 1, BallPlacement::Interior);
        let lam = lambda_trace_class(&a).map_err(|e| e.to_string())?;
        let w = attaining_decomposition(&a).map_err(|e| e.to_string())?;
        let r = amenability_check(&a, &w, BallNorm::Trace, AMENABILITY_TOL).map_err(|e| e.to_string())?;
        ensure(r.ok && r.residual <= 1e-9, || format!("trial {trial}: {r:?}"))?;
        ensure(w.t.to_bits() == lam.value.to_bits(), || format!("trial {trial}: t = {} but λ = {}", w.t, lam.value))?;
        let gap = (trace_norm(&w.y) - 1.0).abs();
        ensure(gap <= 1e-9, || format!("trial {trial}: ‖y‖₁ − 1 = {gap:e}"))?;
        worst_residual = worst_residual.max(r.residual);
        worst_norm_gap = worst_norm_gap.max(gap);
    }
    Ok(format!("1000 witnesses, max residual {worst_residual:.3e}, max |‖y‖₁ − 1| {worst_norm_gap:.3e}"))
}

/// Largest `t` for which `‖a − t·e‖₁ ≤ (1 − t)(1 + 1e-9)`, found by bisection
/// (the constraint is convex in `t` and holds at `t = 0` on the sphere).
fn max_feasible_weight(a: &ComplexMatrix, e: &ComplexMatrix) -> f64 {
    let feasible = |t: f64| trace_norm(&a.add_scaled(-t, e)) <= (1.0 - t) * (1.0 + 1e-9);
    let (mut lo, mut hi) = (0.0, 1.0);
    for _ in 0..45 {
        let mid = 0.5 * (lo + hi);
        if feasible(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

fn sphere_branch() -> Outcome {
    let mut worst_formula: f64 = 0.0;
    let mut worst_excess = f64::NEG_INFINITY;
    for trial in 0..200u64 {
        let mut rng = trial_rng(3, trial);
        let n = 2 + (trial % 3) as usize;
        let a = random_ball_element(&mut rng, n, n, BallNorm::Trace, trial % 2 == 1, BallPlacement::Sphere);
        let sys = svd(&a).map_err(|e| e.to_string())?;
        let mu1 = sys.values[0];
        let lam = lambda_trace_class(&a).map_err(|e| e.to_string())?.value;
        let dev = (lam - mu1).abs();
        ensure(dev <= 1e-12, || format!("trial {trial}: λ − ‖a‖∞ = {dev:e}"))?;
        worst_formula = worst_formula.max(dev);
        // random extreme points, half of them close to the top singular pair
        for k in 0..60 {
            let e = if k % 2 == 0 {
                random_rank_one(&mut rng, n, n)
            } else {
                let scale = 10f64.powf(rng.random_range(-6.0..0.0));
                let perturb = |base: &[_], rng: &mut _| {
                    let noise = random_unit_vector(rng, n);
                    let v: Vec<_> = base.iter().zip(&noise).map(|(x, z)| x + z * scale).collect();
                    let norm = v.iter().map(|z: &C64| z.norm_sqr()).sum::<f64>().sqrt();
                    v.into_iter().map(|z| z / norm).collect::<Vec<_>>()
                };
                let u = perturb(&sys.left[0], &mut rng);
                let v = perturb(&sys.right[0], &mut rng);
                rank_one(&u, &v).map_err(|e| e.to_string())?
            };
            let t = max_feasible_weight(&a, &e);
            worst_excess = worst_excess.max(t - mu1);
            ensure(t <= mu1 + 1e-6, || format!("trial {trial}: feasible t = {t} beats ‖a‖∞ = {mu1}"))?;
        }
    }
    Ok(format!("200 sphere matrices, max |λ − ‖a‖∞| {worst_formula:.3e}, max t − ‖a‖∞ {worst_excess:.3e}"))
}

fn mirsky() -> Outcome {
    let mut min_slack = f64::INFINITY;
    for n in 2..=6 {
        let s = campaign(CampaignKind::Mirsky, n, 10_000, 40 + n as u64)?;
        min_slack = min_slack.min(s.min_slack.unwrap());
    }
    Ok(format!("10⁴ pairs per n ∈ 2..=6, p ∈ {{1, 2, ∞}}, min slack {min_slack:.3e}"))
}

fn markus() -> Outcome {
    let mut min_h = f64::INFINITY;
    let mut min_s = f64::INFINITY;
    let mut max_dev: f64 = 0.0;
    for n in 2..=6 {
        let h = campaign(CampaignKind::Markus, n, 2_000, 50 + n as u64)?;
        let s = campaign(CampaignKind::MarkusSingular, n, 2_000, 60 + n as u64)?;
        min_h = min_h.min(h.min_slack.unwrap());
        min_s = min_s.min(s.min_slack.unwrap());
        max_dev = max_dev.max(s.max_dev.unwrap());
    }
    Ok(format!(
        "10⁴ Hermitian + 10⁴ general pairs, p ∈ {{1, 2, 3}}, min slack {min_h:.3e} / {min_s:.3e}, dilation deviation {max_dev:.3e}"
    ))
}

fn dilation() -> Outcome {
    let mut worst: f64 = 0.0;
    for trial in 0..1000u64 {
        let mut rng = trial_rng(6, trial);
        let n = 1 + (trial % 6) as usize;
        let a = ginibre(&mut rng, n, n, trial % 2 == 1);
        let eig = hermitian_eigenvalues(&wielandt_dilation(&a).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        let mu = singular_values(&a);
        let mut expected: Vec<f64> = mu.iter().copied().chain(mu.iter().map(|m| -m)).collect();
        expected.sort_by(|x, y| y.total_cmp(x));
        let dev = eig.iter().zip(&expected).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
        ensure(dev <= 1e-8, || format!("trial {trial}: deviation {dev:e}"))?;
        worst = worst.max(dev);
    }
    Ok(format!("1000 matrices, max eigenvalue deviation {worst:.3e}"))
}

fn rank_one_minimum() -> Outcome {
    let mut min_slack = f64::INFINITY;
    let mut max_dev: f64 = 0.0;
    for n in 2..=5 {
        let s = campaign(CampaignKind::MinRankOne, n, 50, 70 + n as u64)?;
        min_slack = min_slack.min(s.min_slack.unwrap());
        max_dev = max_dev.max(s.max_dev.unwrap());
    }
    Ok(format!("200 cases × 10⁴ samples, min f(e) − closed form {min_slack:.3e}, argmin deviation {max_dev:.3e}"))
}

fn uniform_failure() -> Outcome {
    let mut worst: f64 = 0.0;
    for n in [1usize, 2, 4, 8, 16, 32, 64] {
        let a = counterexample_sequence(n, n).map_err(|e| e.to_string())?;
        let lam = lambda_trace_class(&a).map_err(|e| e.to_string())?.value;
        let dev = (lam - 1.0 / n as f64).abs();
        ensure(dev <= 1e-12, || format!("n={n}: λ = {lam}"))?;
        worst = worst.max(dev);
    }
    Ok(format!("λ = 1/n for n up to 64, max deviation {worst:.3e}"))
}

fn operator_norm() -> Outcome {
    let s = campaign(CampaignKind::LambdaOperator, 2, 50, 90)?;
    for trial in 0..50u64 {
        let mut rng = trial_rng(91, trial);
        let n = 2 + (trial % 2) as usize;
        let a = random_rank_one(&mut rng, n, n).scale(rng.random_range(0.1..1.0));
        let lam = lambda_operator_norm(&a).map_err(|e| e.to_string())?.value;
        ensure(lam == 0.5, || format!("singular trial {trial}: λ = {lam}"))?;
        if trial < 5 {
            let out = brute_force_lambda(&a, BallNorm::Operator, &SearchBudget::with_seed(trial))
                .map_err(|e| e.to_string())?;
            ensure(out.contains(0.5, 1e-9) && out.width() <= 2e-3, || format!("singular trial {trial}: {out:?}"))?;
        }
    }
    Ok(format!(
        "50 brackets (min margin {}), 50 singular inputs at exactly 1/2",
        fmt_opt(s.min_slack)
    ))
}

fn cross_space() -> Outcome {
    for trial in 0..100u64 {
        let mut rng = trial_rng(10, trial);
        let len = rng.random_range(1..=12);
        let mut x: Vec<f64> = (0..len).map(|_| rng.random_range(0.0..1.0)).collect();
        let total: f64 = x.iter().sum();
        let target = if trial % 10 == 9 { 1.0 } else { rng.random_range(0.05..1.0) };
        x.iter_mut().for_each(|v| *v *= target / total);
        x.sort_by(|a, b| b.total_cmp(a));
        if x.iter().sum::<f64>() > 1.0 {
            let s: f64 = x.iter().sum();
            x.iter_mut().for_each(|v| *v /= s);
        }
        let seq = lambda_ell1(&x).map_err(|e| e.to_string())?.value;
        let mat = lambda_trace_class(&ComplexMatrix::from_diagonal(&x).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?
            .value;
        ensure(seq.to_bits() == mat.to_bits(), || format!("trial {trial}: {seq} vs {mat}"))?;
    }
    Ok("100 sequences agree bit for bit".to_string())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("lambda formula vs brute force", Duration::from_secs(300), oracle_vs_formula),
        ("attained witness", Duration::from_secs(10), attained_witness),
        ("sphere branch", Duration::from_secs(30), sphere_branch),
        ("mirsky inequality", Duration::from_secs(60), mirsky),
        ("markus inequalities", Duration::from_secs(120), markus),
        ("hermitian dilation spectrum", Duration::from_secs(10), dilation),
        ("rank-one minimum", Duration::from_secs(120), rank_one_minimum),
        ("uniform lambda-property failure", Duration::from_secs(1), uniform_failure),
        ("operator-norm lambda", Duration::from_secs(120), operator_norm),
        ("sequence/matrix consistency", Duration::from_secs(1), cross_space),
    ];
    let mut failed = 0;
    for (k, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let time_note = if elapsed > *budget { format!(", over the {budget:?} budget") } else { String::new() };
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{elapsed:.2?}{time_note}]", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} [{elapsed:.2?}{time_note}]", k + 1);
            }
        }
    }
    if failed == 0 {
        println!("acceptance: all {} criteria passed", criteria.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} of {} criteria failed", criteria.len());
        ExitCode::FAILURE
    }
}
