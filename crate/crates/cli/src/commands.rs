use std::fs;
use std::path::Path;

use rand::Rng;
use serde_json::{json, Value};

use schatten_lambda::lambda::{
    attaining_decomposition, counterexample_sequence, greedy_decomposition, lambda,
    lambda_operator_norm, lambda_trace_class, min_rank_one_distance, rank_one_distance, BallNorm,
    LambdaNorm,
};
use schatten_lambda::linalg::{hermitian_eigenvalues, singular_values, wielandt_dilation, ComplexMatrix};
use schatten_lambda::oracle::random::{ginibre, random_hermitian, trial_rng};
use schatten_lambda::oracle::{
    amenability_check, brute_force_lambda, markus_slack, mirsky_slack, run_campaign,
    sampled_minimum, CampaignConfig, CampaignKind, SearchBudget, AMENABILITY_TOL,
    MAX_CAMPAIGN_DIM,
};
use schatten_lambda::{Branch, Error as CoreError, LambdaResult};

use crate::cli::{
    Cli, Command, CounterexampleArgs, DecomposeArgs, DecomposeMode, FuzzArgs, LambdaArgs,
    MinimizeArgs, NormArg, VerifyArgs, VerifyKind,
};
use crate::error::CliError;
use crate::report::{cell, show, Line, Report};

type Result<T> = std::result::Result<T, CliError>;

const SLACK_TOL: f64 = 1e-9;
const SPECTRUM_TOL: f64 = 1e-8;
const ORACLE_TOL: f64 = 1e-3;

pub fn run(cli: &Cli) -> Result<Report> {
    if let Some(tol) = cli.tol {
        if !(tol.is_finite() && tol > 0.0) {
            return Err(CliError::Usage(format!("--tol must be positive and finite, got {tol}")));
        }
    }
    match &cli.command {
        Command::Lambda(args) => cmd_lambda(args),
        Command::Decompose(args) => cmd_decompose(args, cli.tol),
        Command::MinimizeRankOne(args) => cmd_minimize(args),
        Command::Verify(args) => cmd_verify(args, cli.seed, cli.tol),
        Command::Fuzz(args) => cmd_fuzz(args, cli.seed.unwrap_or(0), cli.tol),
        Command::Counterexample(args) => cmd_counterexample(args),
    }
}

pub fn load_matrix(path: &Path) -> Result<ComplexMatrix> {
    let shown = path.display().to_string();
    let text = fs::read_to_string(path).map_err(|source| CliError::Io { path: shown.clone(), source })?;
    ComplexMatrix::from_json_str(&text).map_err(|source| CliError::Parse { path: shown, source })
}

fn ball(norm: NormArg) -> BallNorm {
    match norm {
        NormArg::Trace => BallNorm::Trace,
        NormArg::Operator => BallNorm::Operator,
    }
}

fn explain(res: &LambdaResult) -> (String, String) {
    match res.branch {
        Branch::TraceClass => (
            "λ = (1 − ‖a‖₁ + 2‖a‖∞)/2".into(),
            format!("(1 − {} + 2·{})/2 = {}", res.norm1, res.norm_inf, res.value),
        ),
        Branch::ExtremePoint => (
            "a is an extreme point of the ball".into(),
            "rank one with ‖a‖₁ = 1, so λ = 1".into(),
        ),
        Branch::SchattenP => (
            "λ = (1 + ‖a‖_p)/2".into(),
            format!("(1 + {})/2 = {}", show(res.norm_p), res.value),
        ),
        Branch::OperatorNormInvertible => (
            "λ = (1 + m_q(a))/2, m_q = smallest singular value".into(),
            format!("(1 + {})/2 = {}", show(res.m_q), res.value),
        ),
        Branch::OperatorNormSingular => (
            "a is singular, so m_q(a) = 0".into(),
            "λ = 1/2".into(),
        ),
        Branch::Ell1 | Branch::EllInf => (res.branch.as_str().into(), res.value.to_string()),
    }
}

fn cmd_lambda(args: &LambdaArgs) -> Result<Report> {
    let a = load_matrix(&args.input)?;
    let norm = match (args.norm, args.p) {
        (Some(NormArg::Operator), _) => LambdaNorm::Operator,
        (Some(NormArg::Trace), _) | (None, None) => LambdaNorm::Trace,
        (None, Some(p)) => LambdaNorm::from_p(p)?,
    };
    let res = lambda(&a, norm, args.witness)?;
    let row = vec![
        res.value.to_string(),
        res.branch.as_str().to_string(),
        res.norm1.to_string(),
        res.norm_inf.to_string(),
        cell(res.m_q),
        cell(res.p),
        cell(res.norm_p),
        cell(res.witness.as_ref().map(|w| w.t)),
    ];
    let mut report = Report::new(res.to_json_value()).table(
        vec!["value", "branch", "norm1", "norm_inf", "m_q", "p", "norm_p", "witness_t"],
        vec![row],
    );
    let (rule, instance) = explain(&res);
    report.line(Line::Title(format!("λ(a) = {}", res.value)));
    report.field("branch", res.branch.as_str());
    report.field("rule", rule);
    report.number("‖a‖₁", res.norm1);
    report.number("‖a‖∞", res.norm_inf);
    report.field("evaluated", instance);
    if let Some(w) = &res.witness {
        report.number("witness t", w.t);
    }
    Ok(report)
}

fn cmd_decompose(args: &DecomposeArgs, tol: Option<f64>) -> Result<Report> {
    let a = load_matrix(&args.input)?;
    let norm = ball(args.norm);
    let (w, lam) = match (args.mode, norm) {
        (DecomposeMode::Attaining, BallNorm::Trace) => (attaining_decomposition(&a)?, lambda_trace_class(&a)?.value),
        (DecomposeMode::Greedy, BallNorm::Trace) => (greedy_decomposition(&a)?, lambda_trace_class(&a)?.value),
        (DecomposeMode::Attaining, BallNorm::Operator) => {
            let res = lambda_operator_norm(&a)?;
            (res.witness.expect("operator results carry a witness"), res.value)
        }
        (DecomposeMode::Greedy, BallNorm::Operator) => {
            return Err(CliError::Usage("the greedy split is only defined for the trace norm".into()))
        }
    };
    let tol = tol.unwrap_or(AMENABILITY_TOL);
    let audit = amenability_check(&a, &w, norm, tol)?;
    let mode = match args.mode {
        DecomposeMode::Attaining => "attaining",
        DecomposeMode::Greedy => "greedy",
    };
    let body = json!({
        "mode": mode,
        "norm": norm.name(),
        "lambda": lam,
        "t": w.t,
        "e": w.e,
        "y": w.y,
        "amenability": audit,
        "tol": tol,
    });
    let row = vec![
        mode.to_string(),
        norm.name().to_string(),
        w.t.to_string(),
        lam.to_string(),
        audit.residual.to_string(),
        audit.ball_excess.to_string(),
        audit.extreme_defect.to_string(),
        audit.ok.to_string(),
    ];
    let mut report = Report::new(body).table(
        vec!["mode", "norm", "t", "lambda", "residual", "ball_excess", "extreme_defect", "ok"],
        vec![row],
    );
    report.line(Line::Title(format!("{mode} decomposition, {} norm", norm.name())));
    report.number("t", w.t);
    report.number("λ(a)", lam);
    report.number("residual", audit.residual);
    report.number("ball excess", audit.ball_excess);
    report.number("extreme defect", audit.extreme_defect);
    report.line(Line::Status(audit.ok, format!("amenability audit at tolerance {tol:e}")));
    report.failed = !audit.ok;
    Ok(report)
}

fn cmd_minimize(args: &MinimizeArgs) -> Result<Report> {
    let a = load_matrix(&args.input)?;
    let m = min_rank_one_distance(&a, args.t, args.p)?;
    let body = json!({ "t": args.t, "p": args.p, "value": m.value, "argmin": m.argmin });
    let mut report = Report::new(body)
        .table(vec!["t", "p", "value"], vec![vec![args.t.to_string(), args.p.to_string(), m.value.to_string()]]);
    report.line(Line::Title(format!("min ‖a − t·e‖_p^p = {}", m.value)));
    report.number("t", args.t);
    report.number("p", args.p);
    report.field("argmin", "η₁ξ₁* from the top singular pair");
    Ok(report)
}

/// One evaluated check inside `verify`.
struct Check {
    trial: u64,
    p: Option<f64>,
    slack: Option<f64>,
    deviation: Option<f64>,
    passed: bool,
    dump: Value,
}

struct Verification {
    checks: Vec<Check>,
    extra: Option<Value>,
}

impl Verification {
    fn new() -> Self {
        Self { checks: Vec::new(), extra: None }
    }

    fn failed(&self) -> bool {
        self.checks.last().is_some_and(|c| !c.passed)
    }
}

fn default_ps(kind: VerifyKind) -> Vec<f64> {
    match kind {
        VerifyKind::Mirsky => vec![1.0, 2.0, f64::INFINITY],
        _ => vec![1.0, 2.0, 3.0],
    }
}

struct RandomPlan {
    seed: u64,
    trials: u64,
    dim: usize,
}

fn random_plan(args: &VerifyArgs, seed: Option<u64>) -> Result<RandomPlan> {
    let (Some(seed), Some(trials), Some(dim)) = (seed, args.trials, args.dim) else {
        return Err(CliError::Usage("--random needs --seed, --trials and --dim".into()));
    };
    if dim == 0 || dim > MAX_CAMPAIGN_DIM {
        return Err(CoreError::InvalidParameter(format!("--dim must lie in 1..={MAX_CAMPAIGN_DIM}")).into());
    }
    if trials == 0 {
        return Err(CoreError::InvalidParameter("--trials must be at least 1".into()).into());
    }
    Ok(RandomPlan { seed, trials, dim })
}

fn file_inputs(args: &VerifyArgs, count: usize) -> Result<Vec<ComplexMatrix>> {
    if args.inputs.len() != count {
        return Err(CliError::Usage(format!(
            "expected {count} matrix file(s) or --random, got {}",
            args.inputs.len()
        )));
    }
    args.inputs.iter().map(|p| load_matrix(p)).collect()
}

fn slack_checks(
    v: &mut Verification,
    trial: u64,
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    ps: &[f64],
    tol: f64,
    markus: bool,
) -> Result<()> {
    for &p in ps {
        let r = if markus { markus_slack(a, b, p)? } else { mirsky_slack(a, b, p)? };
        let passed = r.slack >= -tol;
        v.checks.push(Check {
            trial,
            p: Some(p),
            slack: Some(r.slack),
            deviation: None,
            passed,
            dump: serde_json::to_value(&r).expect("report serializes"),
        });
        if !passed {
            break;
        }
    }
    Ok(())
}

fn spectrum_check(v: &mut Verification, trial: u64, a: &ComplexMatrix, tol: f64) -> Result<()> {
    let eig = hermitian_eigenvalues(&wielandt_dilation(a)?)?;
    let mu = singular_values(a);
    let mut expected: Vec<f64> = mu.iter().copied().chain(mu.iter().map(|m| -m)).collect();
    expected.sort_by(|x, y| y.total_cmp(x));
    let dev = eig.iter().zip(&expected).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
    let dump = json!({ "a": a, "eigenvalues": eig, "signed_singular_values": expected });
    v.checks.push(Check { trial, p: None, slack: None, deviation: Some(dev), passed: dev <= tol, dump });
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn rank_one_checks(
    v: &mut Verification,
    trial: u64,
    a: &ComplexMatrix,
    t: f64,
    ps: &[f64],
    samples: usize,
    seed: u64,
    tol: f64,
) -> Result<()> {
    for (k, &p) in ps.iter().enumerate() {
        let closed = min_rank_one_distance(a, t, p)?;
        let dev = (rank_one_distance(a, &closed.argmin, t, p)? - closed.value).abs();
        let mut rng = trial_rng(seed ^ 0x5eed, trial * 8 + k as u64);
        let sampled = sampled_minimum(&mut rng, a, t, p, samples)?;
        let slack = sampled - closed.value;
        let passed = slack >= -tol && dev <= tol;
        let dump = json!({ "a": a, "t": t, "p": p, "closed_form": closed.value, "sampled_minimum": sampled });
        v.checks.push(Check { trial, p: Some(p), slack: Some(slack), deviation: Some(dev), passed, dump });
        if !passed {
            break;
        }
    }
    Ok(())
}

fn cmd_verify(args: &VerifyArgs, seed: Option<u64>, tol: Option<f64>) -> Result<Report> {
    let ps = args.p.map_or_else(|| default_ps(args.kind), |p| vec![p]);
    let mut v = Verification::new();
    let kind_name = match args.kind {
        VerifyKind::Mirsky => "mirsky",
        VerifyKind::Markus => "markus",
        VerifyKind::Wielandt => "wielandt",
        VerifyKind::LambdaOracle => "lambda-oracle",
        VerifyKind::MinRankOne => "min-rank-one",
    };
    let tol = tol.unwrap_or(match args.kind {
        VerifyKind::Wielandt => SPECTRUM_TOL,
        VerifyKind::LambdaOracle => ORACLE_TOL,
        _ => SLACK_TOL,
    });
    let mode = if args.random { "random" } else { "file" };
    if args.random {
        let plan = random_plan(args, seed)?;
        if args.kind == VerifyKind::LambdaOracle {
            return lambda_oracle_campaign(args, &plan, tol);
        }
        for trial in 0..plan.trials {
            let mut rng = trial_rng(plan.seed, trial);
            let real = trial % 2 == 1;
            let n = plan.dim;
            match args.kind {
                VerifyKind::Mirsky => {
                    let (a, b) = (ginibre(&mut rng, n, n, real), ginibre(&mut rng, n, n, real));
                    slack_checks(&mut v, trial, &a, &b, &ps, tol, false)?;
                }
                VerifyKind::Markus => {
                    let (a, b) = (random_hermitian(&mut rng, n, real), random_hermitian(&mut rng, n, real));
                    slack_checks(&mut v, trial, &a, &b, &ps, tol, true)?;
                }
                VerifyKind::Wielandt => {
                    let a = ginibre(&mut rng, n, n, real);
                    spectrum_check(&mut v, trial, &a, tol)?;
                }
                VerifyKind::MinRankOne => {
                    let g = ginibre(&mut rng, n, n, real);
                    let a = g.scale(rng.random_range(0.1..1.5) / singular_values(&g)[0]);
                    let t = rng.random_range(0.05..2.0);
                    rank_one_checks(&mut v, trial, &a, t, &ps, args.samples, plan.seed, tol)?;
                }
                VerifyKind::LambdaOracle => unreachable!("handled above"),
            }
            if v.failed() {
                break;
            }
        }
    } else {
        match args.kind {
            VerifyKind::Mirsky | VerifyKind::Markus => {
                let m = file_inputs(args, 2)?;
                slack_checks(&mut v, 0, &m[0], &m[1], &ps, tol, args.kind == VerifyKind::Markus)?;
            }
            VerifyKind::Wielandt => {
                let m = file_inputs(args, 1)?;
                spectrum_check(&mut v, 0, &m[0], tol)?;
                v.extra = Some(v.checks[0].dump.clone());
            }
            VerifyKind::MinRankOne => {
                let m = file_inputs(args, 1)?;
                let t = args.t.ok_or_else(|| CliError::Usage("min-rank-one on a file needs --t".into()))?;
                rank_one_checks(&mut v, 0, &m[0], t, &ps, args.samples, seed.unwrap_or(0), tol)?;
            }
            VerifyKind::LambdaOracle => {
                let m = file_inputs(args, 1)?;
                lambda_oracle_file(&mut v, &m[0], ball(args.norm), seed.unwrap_or(0), tol)?;
                v.extra = Some(v.checks[0].dump.clone());
            }
        }
    }
    Ok(verification_report(kind_name, mode, tol, v))
}

fn lambda_oracle_file(v: &mut Verification, a: &ComplexMatrix, norm: BallNorm, seed: u64, tol: f64) -> Result<()> {
    let formula = match norm {
        BallNorm::Trace => lambda_trace_class(a)?.value,
        BallNorm::Operator => lambda_operator_norm(a)?.value,
    };
    let budget = SearchBudget { tolerance: tol, ..SearchBudget::with_seed(seed) };
    let out = brute_force_lambda(a, norm, &budget)?;
    let slack = (formula - out.lower).min(out.upper - formula);
    let deviation = (formula - out.midpoint()).abs();
    let passed = out.conclusive && out.contains(formula, 1e-9) && out.width() <= 2.0 * tol;
    let dump = json!({
        "norm": norm.name(),
        "formula": formula,
        "lower": out.lower,
        "upper": out.upper,
        "conclusive": out.conclusive,
        "evaluations": out.evaluations,
        "best": out.best,
    });
    v.checks.push(Check { trial: 0, p: None, slack: Some(slack), deviation: Some(deviation), passed, dump });
    Ok(())
}

fn lambda_oracle_campaign(args: &VerifyArgs, plan: &RandomPlan, tol: f64) -> Result<Report> {
    let kind = match args.norm {
        NormArg::Trace => CampaignKind::LambdaTrace,
        NormArg::Operator => CampaignKind::LambdaOperator,
    };
    let mut cfg = CampaignConfig::new(kind, plan.dim, plan.trials, plan.seed);
    cfg.budget.tolerance = tol;
    let s = run_campaign(&cfg)?;
    let mut v = Verification::new();
    for r in &s.records {
        let dump = match s.failures.first() {
            Some(f) if f.trial == r.trial => serde_json::to_value(f).expect("dump serializes"),
            _ => Value::Null,
        };
        v.checks.push(Check { trial: r.trial, p: None, slack: r.slack, deviation: r.deviation, passed: r.passed, dump });
    }
    Ok(verification_report("lambda-oracle", "random", tol, v))
}

fn verification_report(kind: &str, mode: &str, tol: f64, v: Verification) -> Report {
    let min_slack = v.checks.iter().filter_map(|c| c.slack).reduce(f64::min);
    let max_dev = v.checks.iter().filter_map(|c| c.deviation).reduce(f64::max);
    let failure = v.checks.iter().find(|c| !c.passed);
    let passed = failure.is_none();
    let mut body = json!({
        "kind": kind,
        "mode": mode,
        "tol": tol,
        "checks": v.checks.len(),
        "min_slack": min_slack,
        "max_dev": max_dev,
        "passed": passed,
        "failure": failure.map(|c| json!({ "trial": c.trial, "p": c.p, "slack": c.slack, "deviation": c.deviation, "witness": c.dump })),
    });
    if let Some(extra) = &v.extra {
        body["detail"] = extra.clone();
    }
    let rows = v
        .checks
        .iter()
        .map(|c| vec![c.trial.to_string(), cell(c.p), cell(c.slack), cell(c.deviation), c.passed.to_string()])
        .collect();
    let mut report = Report::new(body).table(vec!["trial", "p", "slack", "deviation", "passed"], rows);
    report.line(Line::Title(format!("verify {kind} ({mode})")));
    report.field("checks", v.checks.len());
    report.field("min slack", show(min_slack));
    report.field("max deviation", show(max_dev));
    report.field("tolerance", format!("{tol:e}"));
    if let Some(c) = failure {
        report.line(Line::Text(format!("first failure at trial {}{}", c.trial, c.p.map(|p| format!(", p = {p}")).unwrap_or_default())));
    }
    report.line(Line::Status(passed, kind.to_string()));
    report.failed = !passed;
    report
}

fn cmd_fuzz(args: &FuzzArgs, seed: u64, tol: Option<f64>) -> Result<Report> {
    let kind: CampaignKind = args.kind.parse()?;
    let mut cfg = CampaignConfig::new(kind, args.n, args.trials, seed);
    cfg.samples = args.samples;
    if let Some(tol) = tol {
        match kind {
            CampaignKind::LambdaTrace | CampaignKind::LambdaOperator => cfg.budget.tolerance = tol,
            _ => {
                cfg.slack_tol = tol;
                cfg.dev_tol = Some(tol);
            }
        }
    }
    let s = run_campaign(&cfg)?;
    let rows = s
        .records
        .iter()
        .map(|r| vec![r.trial.to_string(), cell(r.slack), cell(r.deviation), r.passed.to_string()])
        .collect();
    let body = serde_json::to_value(&s).expect("summary serializes");
    let mut report = Report::new(body).table(vec!["trial", "slack", "deviation", "passed"], rows);
    report.line(Line::Title(format!("campaign {kind}, n = {}, seed = {seed}", args.n)));
    report.field("trials run", format!("{} of {}", s.trials_run, s.trials));
    report.field("min slack", show(s.min_slack));
    report.field("max deviation", show(s.max_dev));
    if let Some(f) = s.failures.first() {
        report.line(Line::Text(format!("trial {}: {}", f.trial, f.detail)));
    }
    report.line(Line::Status(s.passed, kind.to_string()));
    report.failed = !s.passed;
    Ok(report)
}

fn cmd_counterexample(args: &CounterexampleArgs) -> Result<Report> {
    let dim = args.dim.unwrap_or(args.n);
    if args.n == 0 || args.n > dim || dim > MAX_CAMPAIGN_DIM {
        return Err(CoreError::InvalidInput(format!(
            "need 1 ≤ n ≤ dim ≤ {MAX_CAMPAIGN_DIM}, got n = {}, dim = {dim}",
            args.n
        ))
        .into());
    }
    let a = counterexample_sequence(args.n, dim)?;
    let value = lambda_trace_class(&a)?.value;
    let mut table = Vec::new();
    let mut n = 1;
    while n <= MAX_CAMPAIGN_DIM {
        table.push((n, lambda_trace_class(&counterexample_sequence(n, n)?)?.value));
        n *= 2;
    }
    let mut body = json!({
        "n": args.n,
        "dim": dim,
        "lambda": value,
        "table": table.iter().map(|(n, l)| json!({ "n": n, "lambda": l })).collect::<Vec<_>>(),
    });
    match &args.out {
        Some(path) => {
            fs::write(path, a.to_json_string() + "\n")
                .map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
            body["path"] = json!(path.display().to_string());
        }
        None => body["matrix"] = serde_json::to_value(&a).expect("matrix serializes"),
    }
    let rows = std::iter::once((args.n, dim, value))
        .chain(table.iter().map(|&(n, l)| (n, n, l)))
        .map(|(n, d, l)| vec![n.to_string(), d.to_string(), l.to_string()])
        .collect();
    let mut report = Report::new(body).table(vec!["n", "dim", "lambda"], rows);
    report.line(Line::Title(format!("λ(diag(1/{0}, …, 1/{0})) = {value}", args.n)));
    if let Some(path) = &args.out {
        report.field("written to", path.display());
    }
    report.line(Line::Text("λ along n = 1, 2, 4, …, 64 (infimum 0):".into()));
    for (n, l) in &table {
        report.number(format!("n = {n}"), *l);
    }
    Ok(report)
}
