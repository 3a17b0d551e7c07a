use super::decompose::{attaining_from_svd, operator_decomposition_from_svd};
use super::{Branch, LambdaResult, BALL_TOL, EXTREME_TOL};
use crate::error::{Error, Result};
use crate::linalg::{schatten_from_values, svd, ComplexMatrix, RANK_CUTOFF};

/// Shared trace-class / `ℓ₁` evaluation on `(‖a‖₁, ‖a‖∞)`.
///
/// Returns the rescaled pair (sphere elements inside the tolerance band are
/// pulled back onto the sphere), the value `(1 − ‖a‖₁ + 2‖a‖∞)/2`, and
/// whether the element is an extreme point. Both the matrix and the
/// sequence forms go through here, so diagonal inputs agree bit for bit.
pub fn trace_class_value(norm1: f64, norm_inf: f64) -> Result<(f64, f64, f64, bool)> {
    if norm1 > 1.0 + BALL_TOL {
        return Err(Error::OutsideUnitBall { norm_name: "trace", norm: norm1 });
    }
    let (n1, m1) = if norm1 > 1.0 { (1.0, norm_inf / norm1) } else { (norm1, norm_inf) };
    let extreme = m1 >= 1.0 - EXTREME_TOL && n1 - m1 <= EXTREME_TOL;
    let value = if extreme { 1.0 } else { ((1.0 - n1 + 2.0 * m1) / 2.0).clamp(0.0, 1.0) };
    Ok((n1, m1, value, extreme))
}

/// `λ(a) = (1 − ‖a‖₁ + 2‖a‖∞)/2` on the trace-class unit ball, with the
/// attaining decomposition as witness.
pub fn lambda_trace_class(a: &ComplexMatrix) -> Result<LambdaResult> {
    let sys = svd(a)?;
    let norm1: f64 = sys.values.iter().sum();
    let (n1, m1, value, extreme) = trace_class_value(norm1, sys.max_value())?;
    let witness = attaining_from_svd(a, &sys, n1, norm1, extreme)?;
    let branch = if extreme { Branch::ExtremePoint } else { Branch::TraceClass };
    let mut res = LambdaResult::new(value, branch, n1, m1);
    debug_assert_eq!(witness.t, value);
    res.witness = Some(witness);
    Ok(res)
}

/// `λ(a) = (1 + ‖a‖_p)/2` on the strictly convex Schatten `p`-ball, `1 < p < ∞`.
pub fn lambda_schatten_p(a: &ComplexMatrix, p: f64) -> Result<LambdaResult> {
    if !(p > 1.0 && p.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "the strictly convex form needs 1 < p < ∞, got {p}"
        )));
    }
    let values = crate::linalg::singular_values(a);
    let norm_p = schatten_from_values(&values, p)?;
    if norm_p > 1.0 + BALL_TOL {
        return Err(Error::OutsideUnitBall { norm_name: "Schatten-p", norm: norm_p });
    }
    let norm_p = norm_p.min(1.0);
    let mut res = LambdaResult::new(
        (1.0 + norm_p) / 2.0,
        Branch::SchattenP,
        values.iter().sum(),
        values[0],
    );
    res.p = Some(p);
    res.norm_p = Some(norm_p);
    Ok(res)
}

/// Distance from `a` to the non-invertible matrices: the smallest singular
/// value when `a` is invertible, and 0 otherwise.
pub fn m_q(a: &ComplexMatrix) -> Result<f64> {
    a.ensure_square()?;
    let values = crate::linalg::singular_values(a);
    Ok(m_q_from_values(&values))
}

pub(crate) fn m_q_from_values(values: &[f64]) -> f64 {
    let mu1 = values[0];
    let last = *values.last().expect("non-empty spectrum");
    if mu1 > 0.0 && last > RANK_CUTOFF * mu1 {
        last
    } else {
        0.0
    }
}

/// `λ(a) = (1 + m_q(a))/2` on the operator-norm ball of `Mₙ`.
///
/// Singular matrices have `m_q = 0` and land on `1/2`. The witness is the
/// polar decomposition triplet `(U, (a − λU)/(1−λ), λ)`.
pub fn lambda_operator_norm(a: &ComplexMatrix) -> Result<LambdaResult> {
    a.ensure_square()?;
    let sys = svd(a)?;
    let mu1 = sys.max_value();
    if mu1 > 1.0 + BALL_TOL {
        return Err(Error::OutsideUnitBall { norm_name: "operator", norm: mu1 });
    }
    let scale = if mu1 > 1.0 { 1.0 / mu1 } else { 1.0 };
    let values: Vec<f64> = sys.values.iter().map(|s| s * scale).collect();
    let mq = m_q_from_values(&values);
    let value = ((1.0 + mq) / 2.0).min(1.0);
    let branch = if mq > 0.0 { Branch::OperatorNormInvertible } else { Branch::OperatorNormSingular };
    let norm1: f64 = values.iter().sum();
    let mut res = LambdaResult::new(value, branch, norm1, values[0]);
    res.m_q = Some(mq);
    res.witness = Some(operator_decomposition_from_svd(a, &sys, scale, value));
    Ok(res)
}

fn validate_sequence(x: &[f64]) -> Result<()> {
    if x.is_empty() {
        return Err(Error::InvalidInput("empty sequence".into()));
    }
    if let Some(bad) = x.iter().find(|v| !v.is_finite() || **v < 0.0) {
        return Err(Error::InvalidInput(format!("sequence entries must be finite and nonnegative, got {bad}")));
    }
    Ok(())
}

/// `λ(x) = (1 − ‖x‖₁ + 2·max x)/2` on the `ℓ₁` ball, for nonnegative entries.
pub fn lambda_ell1(x: &[f64]) -> Result<LambdaResult> {
    validate_sequence(x)?;
    let mut sorted = x.to_vec();
    sorted.sort_by(|a, b| b.total_cmp(a));
    let sum: f64 = sorted.iter().sum();
    let (n1, m1, value, extreme) = trace_class_value(sum, sorted[0]).map_err(|_| {
        Error::InvalidInput(format!("sequence sum {sum} exceeds 1"))
    })?;
    let branch = if extreme { Branch::ExtremePoint } else { Branch::Ell1 };
    Ok(LambdaResult::new(value, branch, n1, m1))
}

/// `λ(x) = (1 + min x)/2` on the `ℓ∞` ball, for nonnegative entries.
pub fn lambda_ell_inf(x: &[f64]) -> Result<LambdaResult> {
    validate_sequence(x)?;
    let max = x.iter().copied().fold(0.0, f64::max);
    if max > 1.0 + BALL_TOL {
        return Err(Error::InvalidInput(format!("sequence entry {max} exceeds 1")));
    }
    let min = x.iter().copied().fold(f64::INFINITY, f64::min).min(1.0);
    let mut res = LambdaResult::new((1.0 + min) / 2.0, Branch::EllInf, x.iter().sum(), max);
    res.m = Some(min);
    Ok(res)
}

/// `diag(1/n, …, 1/n, 0, …, 0)` of size `dim`: a sphere element with
/// `λ = 1/n`, so `λ` has no positive lower bound over the ball.
pub fn counterexample_sequence(n: usize, dim: usize) -> Result<ComplexMatrix> {
    if n == 0 {
        return Err(Error::InvalidInput("n must be at least 1".into()));
    }
    if dim < n {
        return Err(Error::InvalidInput(format!("dimension {dim} is smaller than n = {n}")));
    }
    let mut diag = vec![0.0; dim];
    diag[..n].fill(1.0 / n as f64);
    ComplexMatrix::from_diagonal(&diag)
}
