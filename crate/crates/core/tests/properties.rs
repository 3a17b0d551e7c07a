//! Property-based invariants of the linear algebra kernel, the closed forms
//! and their witnesses.

use proptest::prelude::*;
use schatten_lambda::lambda::{
    attaining_decomposition, greedy_decomposition, lambda_operator_norm, lambda_trace_class,
    operator_decomposition, BallNorm,
};
use schatten_lambda::linalg::{
    rank_one, schatten_norm, singular_values, svd, trace_norm, ComplexMatrix, C64,
};
use schatten_lambda::oracle::random::{haar_unitary, trial_rng};
use schatten_lambda::oracle::{
    amenability_check, mirsky_slack, run_campaign, CampaignConfig, CampaignKind, AMENABILITY_TOL,
};

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = ComplexMatrix> {
    prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), rows * cols).prop_map(move |v| {
        ComplexMatrix::from_vec(rows, cols, v.into_iter().map(|(re, im)| C64::new(re, im)).collect()).unwrap()
    })
}

fn square() -> impl Strategy<Value = ComplexMatrix> {
    (1usize..=5).prop_flat_map(|n| matrix(n, n))
}

fn any_shape() -> impl Strategy<Value = ComplexMatrix> {
    (1usize..=5, 1usize..=5).prop_flat_map(|(r, c)| matrix(r, c))
}

/// Nonzero square matrix rescaled so that its trace norm is `r`.
fn trace_ball() -> impl Strategy<Value = ComplexMatrix> {
    (square(), 0.05..=1.0f64).prop_filter_map("nonzero", |(a, r)| {
        let n = trace_norm(&a);
        (n > 1e-6).then(|| a.scale(r / n))
    })
}

fn unit_vector(n: usize) -> impl Strategy<Value = Vec<C64>> {
    prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), n).prop_filter_map("nonzero", |v| {
        let v: Vec<C64> = v.into_iter().map(|(re, im)| C64::new(re, im)).collect();
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        (norm > 1e-3).then(|| v.into_iter().map(|z| z / norm).collect())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn svd_reconstructs_with_orthonormal_factors(a in any_shape()) {
        let sys = svd(&a).unwrap();
        let scale = a.frobenius_norm().max(1.0);
        prop_assert!((&sys.reconstruct() - &a).frobenius_norm() <= 1e-12 * scale);
        prop_assert!(sys.values.windows(2).all(|w| w[0] >= w[1]));
        prop_assert!(sys.values.iter().all(|s| *s >= 0.0));
        for vecs in [&sys.left, &sys.right] {
            for (i, x) in vecs.iter().enumerate() {
                for (j, y) in vecs.iter().enumerate() {
                    let ip: C64 = x.iter().zip(y).map(|(p, q)| p.conj() * q).sum();
                    let expected = if i == j { 1.0 } else { 0.0 };
                    prop_assert!((ip - expected).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn singular_values_are_unitarily_invariant(a in square(), seed in any::<u64>()) {
        let mut rng = trial_rng(seed, 0);
        let n = a.rows();
        let (u, w) = (haar_unitary(&mut rng, n), haar_unitary(&mut rng, n));
        let b = &(&u * &a) * &w;
        for (x, y) in singular_values(&a).iter().zip(singular_values(&b)) {
            prop_assert!((x - y).abs() <= 1e-12 * a.frobenius_norm().max(1.0));
        }
        let (la, lb) = (trace_norm(&a), trace_norm(&b));
        if la > 0.0 {
            let (sa, sb) = (a.scale(0.9 / la), b.scale(0.9 / la));
            let (xa, xb) = (lambda_trace_class(&sa).unwrap().value, lambda_trace_class(&sb).unwrap().value);
            prop_assert!((xa - xb).abs() < 1e-12, "{} vs {}", xa, xb);
            prop_assert!((lb / la - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn schatten_norms_decrease_in_p(a in any_shape()) {
        let ps = [1.0, 1.5, 2.0, 3.0, 7.0, f64::INFINITY];
        let norms: Vec<f64> = ps.iter().map(|&p| schatten_norm(&a, p).unwrap()).collect();
        for w in norms.windows(2) {
            prop_assert!(w[1] <= w[0] * (1.0 + 1e-12) + 1e-15, "{:?}", norms);
        }
        prop_assert!((norms[2] - a.frobenius_norm()).abs() <= 1e-12 * a.frobenius_norm().max(1.0));
    }

    #[test]
    fn attaining_witness_is_amenable(a in trace_ball()) {
        let lam = lambda_trace_class(&a).unwrap();
        let w = attaining_decomposition(&a).unwrap();
        prop_assert_eq!(w.t.to_bits(), lam.value.to_bits());
        let r = amenability_check(&a, &w, BallNorm::Trace, AMENABILITY_TOL).unwrap();
        prop_assert!(r.ok, "{:?}", r);
    }

    #[test]
    fn greedy_never_beats_the_formula(a in trace_ball()) {
        let lam = lambda_trace_class(&a).unwrap().value;
        let g = greedy_decomposition(&a).unwrap();
        prop_assert!(g.t <= lam + 1e-12);
        let r = amenability_check(&a, &g, BallNorm::Trace, AMENABILITY_TOL).unwrap();
        prop_assert!(r.ok, "{:?}", r);
    }

    #[test]
    fn no_triplet_beats_the_formula(
        (u, v, y) in (1usize..=4).prop_flat_map(|n| (unit_vector(n), unit_vector(n), matrix(n, n))),
        t in 0.0..=1.0f64,
        r in 0.0..=1.0f64,
    ) {
        let e = rank_one(&u, &v).unwrap();
        let ny = trace_norm(&y);
        let y = if ny > 0.0 { y.scale(r / ny) } else { y };
        let a = e.scale(t).add_scaled(1.0 - t, &y);
        // rounding can push the combination a hair outside the ball
        let na = trace_norm(&a);
        let a = if na > 1.0 { a.scale(1.0 / na) } else { a };
        let lam = lambda_trace_class(&a).unwrap().value;
        prop_assert!(t <= lam + 1e-9, "t = {} > λ = {}", t, lam);
    }

    #[test]
    fn operator_witness_is_amenable(a in square(), r in 0.05..=1.0f64) {
        let top = singular_values(&a)[0];
        prop_assume!(top > 1e-6);
        let a = a.scale(r / top);
        let lam = lambda_operator_norm(&a).unwrap();
        let w = operator_decomposition(&a).unwrap();
        prop_assert!((w.t - lam.value).abs() < 1e-15);
        let rep = amenability_check(&a, &w, BallNorm::Operator, AMENABILITY_TOL).unwrap();
        prop_assert!(rep.ok, "{:?}", rep);
    }

    #[test]
    fn mirsky_holds(a in matrix(3, 3), b in matrix(3, 3)) {
        for p in [1.0, 2.0, 4.0, f64::INFINITY] {
            prop_assert!(mirsky_slack(&a, &b, p).unwrap().slack >= -1e-9);
        }
    }

    #[test]
    fn matrix_json_round_trips(a in any_shape()) {
        let back = ComplexMatrix::from_json_str(&a.to_json_string()).unwrap();
        prop_assert_eq!(back, a);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn campaigns_are_deterministic(seed in any::<u64>(), kind in 0usize..4) {
        let kind = [CampaignKind::Mirsky, CampaignKind::Markus, CampaignKind::MarkusSingular, CampaignKind::OrthogonalAdditivity][kind];
        let cfg = CampaignConfig::new(kind, 3, 25, seed);
        let a = run_campaign(&cfg).unwrap();
        let b = run_campaign(&cfg).unwrap();
        prop_assert_eq!(a.to_json_string(), b.to_json_string());
        prop_assert_eq!(a.records, b.records);
    }
}
