//! Reference values for the public operations and the seeded campaigns.

use schatten_lambda::lambda::{
    attaining_decomposition, counterexample_sequence, greedy_decomposition, lambda_ell1,
    lambda_ell_inf, lambda_operator_norm, lambda_schatten_p, lambda_trace_class, m_q,
    min_rank_one_distance, BallNorm,
};
use schatten_lambda::linalg::{basis_rank_one, rank_one, trace_norm, ComplexMatrix, C64};
use schatten_lambda::oracle::{
    brute_force_lambda, run_campaign, CampaignConfig, CampaignKind, SearchBudget,
};
use schatten_lambda::{Branch, Error};

fn diag(d: &[f64]) -> ComplexMatrix {
    ComplexMatrix::from_diagonal(d).unwrap()
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

#[test]
fn closed_forms() {
    assert_eq!(lambda_trace_class(&ComplexMatrix::zeros(2, 2)).unwrap().value, 0.5);
    assert!(close(lambda_trace_class(&diag(&[0.5, 0.3])).unwrap().value, 0.6, 1e-15));
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let u = [C64::new(s, 0.0), C64::new(0.0, s)];
    let v = [C64::new(0.0, 1.0), C64::new(0.0, 0.0)];
    let r = lambda_trace_class(&rank_one(&u, &v).unwrap()).unwrap();
    assert_eq!((r.value, r.branch), (1.0, Branch::ExtremePoint));
    assert_eq!(lambda_trace_class(&diag(&[0.5, 0.5])).unwrap().value, 0.5);
    assert!(matches!(lambda_trace_class(&diag(&[1.0, 0.5])), Err(Error::OutsideUnitBall { .. })));

    assert_eq!(lambda_schatten_p(&ComplexMatrix::zeros(2, 2), 2.0).unwrap().value, 0.5);
    assert!(close(lambda_schatten_p(&diag(&[0.6, 0.0]), 2.0).unwrap().value, 0.8, 1e-15));
    assert!(close(lambda_schatten_p(&diag(&[0.6, 0.8]), 2.0).unwrap().value, 1.0, 1e-15));

    assert!(close(m_q(&diag(&[0.9, 0.4])).unwrap(), 0.4, 1e-15));
    assert_eq!(m_q(&diag(&[0.9, 0.0])).unwrap(), 0.0);
    assert!(close(lambda_operator_norm(&diag(&[0.9, 0.4])).unwrap().value, 0.7, 1e-15));
    assert_eq!(lambda_operator_norm(&diag(&[0.9, 0.0])).unwrap().value, 0.5);
    let unitary = ComplexMatrix::from_real_rows(&[vec![0.0, 1.0], vec![-1.0, 0.0]]).unwrap();
    assert!(close(lambda_operator_norm(&unitary).unwrap().value, 1.0, 1e-15));

    assert_eq!(
        lambda_ell1(&[0.5, 0.3]).unwrap().value.to_bits(),
        lambda_trace_class(&diag(&[0.5, 0.3])).unwrap().value.to_bits()
    );
    assert_eq!(lambda_ell1(&[1.0]).unwrap().value, 1.0);
    assert_eq!(lambda_ell1(&[0.0, 0.0, 0.0]).unwrap().value, 0.5);
    assert_eq!(lambda_ell_inf(&[1.0, 1.0, 1.0]).unwrap().value, 1.0);
    assert!(close(lambda_ell_inf(&[0.4, 0.9]).unwrap().value, 0.7, 1e-15));
    assert_eq!(lambda_ell_inf(&[0.3, 0.0, 0.8]).unwrap().value, 0.5);

    for (n, dim, expected) in [(1, 3, 1.0), (2, 2, 0.5), (8, 8, 0.125)] {
        let a = counterexample_sequence(n, dim).unwrap();
        assert!(close(lambda_trace_class(&a).unwrap().value, expected, 1e-12));
    }
    assert!(matches!(counterexample_sequence(4, 3), Err(Error::InvalidInput(_))));
}

#[test]
fn decompositions() {
    let a = diag(&[0.5, 0.3]);
    let w = attaining_decomposition(&a).unwrap();
    assert!(close(w.t, 0.6, 1e-15));
    let expected_y = diag(&[-0.25, 0.75]);
    assert!((&w.y - &expected_y).max_abs() < 1e-15);
    assert!((&w.combine() - &a).max_abs() < 1e-15);
    assert!(close(trace_norm(&w.y), 1.0, 1e-15));

    let g = greedy_decomposition(&a).unwrap();
    assert!(close(g.t, 0.5, 1e-15));
    assert!((&g.y - &diag(&[0.0, 0.6])).max_abs() < 1e-15);
    let g = greedy_decomposition(&diag(&[0.5, 0.5])).unwrap();
    assert!(close(trace_norm(&g.y), 1.0, 1e-15));
    assert!(matches!(greedy_decomposition(&ComplexMatrix::zeros(2, 2)), Err(Error::Degenerate(_))));

    let zero = attaining_decomposition(&ComplexMatrix::zeros(2, 2)).unwrap();
    assert_eq!(zero.t, 0.5);
    assert_eq!(zero.e, basis_rank_one(2, 2, 0, 0));
}

#[test]
fn rank_one_minimum() {
    let a = diag(&[0.5, 0.3]);
    assert!(close(min_rank_one_distance(&a, 0.9, 1.0).unwrap().value, 0.7, 1e-15));
    assert!(close(min_rank_one_distance(&a, 1.0, 2.0).unwrap().value, 0.34, 1e-15));
    let e = basis_rank_one(3, 3, 2, 1);
    assert!(min_rank_one_distance(&e.scale(0.7), 0.7, 3.0).unwrap().value < 1e-15);
    assert!(matches!(min_rank_one_distance(&a, 0.0, 1.0), Err(Error::InvalidParameter(_))));
}

#[test]
fn brute_force_matches_to_fine_tolerance() {
    let budget = SearchBudget { tolerance: 1e-4, ..SearchBudget::with_seed(5) };
    let out = brute_force_lambda(&diag(&[0.5, 0.3]), BallNorm::Trace, &budget).unwrap();
    assert!(out.conclusive && out.contains(0.6, 1e-9) && out.width() <= 2e-4, "{out:?}");
    let out = brute_force_lambda(&ComplexMatrix::zeros(2, 2), BallNorm::Trace, &budget).unwrap();
    assert!(out.contains(0.5, 1e-9), "{out:?}");
    let out = brute_force_lambda(&diag(&[0.9, 0.4]), BallNorm::Operator, &budget).unwrap();
    assert!(out.contains(0.7, 1e-9) && out.width() <= 2e-4, "{out:?}");
}

#[test]
fn mirsky_campaign() {
    let s = run_campaign(&CampaignConfig::new(CampaignKind::Mirsky, 4, 1000, 42)).unwrap();
    assert!(s.passed);
    assert!(s.min_slack.unwrap() >= -1e-9);
}

#[test]
fn lambda_trace_campaign() {
    let s = run_campaign(&CampaignConfig::new(CampaignKind::LambdaTrace, 2, 50, 7)).unwrap();
    assert!(s.passed, "{:?}", s.failures);
    assert!(s.max_dev.unwrap() <= 1e-3);
}

#[test]
fn min_rank_one_campaign() {
    let s = run_campaign(&CampaignConfig::new(CampaignKind::MinRankOne, 3, 200, 9)).unwrap();
    assert!(s.passed, "{:?}", s.failures);
    assert!(s.min_slack.unwrap() >= -1e-9);
}

#[test]
fn orthogonal_additivity_campaign() {
    let s = run_campaign(&CampaignConfig::new(CampaignKind::OrthogonalAdditivity, 5, 300, 11)).unwrap();
    assert!(s.passed, "{:?}", s.failures);
    assert!(s.max_dev.unwrap() <= 1e-9);
}

#[test]
fn campaign_summary_shape() {
    let s = run_campaign(&CampaignConfig::new(CampaignKind::Markus, 3, 20, 1)).unwrap();
    let v: serde_json::Value = serde_json::from_str(&s.to_json_string()).unwrap();
    for key in ["kind", "n", "trials", "seed", "min_slack", "max_dev", "failures"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["kind"], "markus");
    assert!(matches!("nope".parse::<CampaignKind>(), Err(Error::InvalidParameter(_))));
}
