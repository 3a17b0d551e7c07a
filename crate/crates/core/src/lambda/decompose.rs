use super::closed_form::{lambda_operator_norm, trace_class_value};
use super::{AmenableTriplet, EXTREME_TOL};
use crate::error::{Error, Result};
use crate::linalg::{basis_rank_one, svd, ComplexMatrix, SingularSystem};

const MIN_DENOMINATOR: f64 = 1e-12;

/// The decomposition attaining `λ(a)` on the trace-class ball:
///
/// `e = η₁ ⊗ ξ₁`, `t = (1 − ‖a‖₁ + 2μ₁)/2` and
/// `y = ((‖a‖₁ − 1)·e₁ + Σ_{n≥2} 2μₙ·eₙ) / (1 + ‖a‖₁ − 2μ₁)`,
/// which has `‖y‖₁ = 1` whenever `a` is not extreme.
///
/// Extreme points decompose trivially as `(a, 0, 1)`; the zero matrix uses
/// `e = e₁e₁*`, `y = −e`.
pub fn attaining_decomposition(a: &ComplexMatrix) -> Result<AmenableTriplet> {
    let sys = svd(a)?;
    let norm1: f64 = sys.values.iter().sum();
    let (n1, _, _, extreme) = trace_class_value(norm1, sys.max_value())?;
    attaining_from_svd(a, &sys, n1, norm1, extreme)
}

pub(crate) fn attaining_from_svd(
    a: &ComplexMatrix,
    sys: &SingularSystem,
    n1: f64,
    raw_norm1: f64,
    extreme: bool,
) -> Result<AmenableTriplet> {
    let (rows, cols) = a.shape();
    let scale = if raw_norm1 > 1.0 { 1.0 / raw_norm1 } else { 1.0 };
    if extreme {
        return Ok(AmenableTriplet { t: 1.0, e: a.scale(scale), y: ComplexMatrix::zeros(rows, cols) });
    }
    if n1 == 0.0 {
        let e = basis_rank_one(rows, cols, 0, 0);
        let y = e.scale(-1.0);
        return Ok(AmenableTriplet { t: 0.5, e, y });
    }
    let mu: Vec<f64> = sys.values.iter().map(|s| s * scale).collect();
    let m1 = mu[0];
    let t = trace_class_value(n1, m1)?.2;
    let denom = 1.0 + n1 - 2.0 * m1;
    if denom < MIN_DENOMINATOR {
        return Err(Error::Degenerate(format!(
            "1 + ‖a‖₁ − 2‖a‖∞ = {denom:e} for an element not recognised as extreme"
        )));
    }
    let e = sys.rank_one_term(0);
    let mut y = e.scale((n1 - 1.0) / denom);
    for (k, &m) in mu.iter().enumerate().skip(1) {
        if m != 0.0 {
            y = y.add_scaled(2.0 * m / denom, &sys.rank_one_term(k));
        }
    }
    Ok(AmenableTriplet { t, e, y })
}

/// Largest-singular-value split `a = μ₁·e₁ + (1 − μ₁)·y` with
/// `y = Σ_{n≥2} μₙ/(1 − μ₁)·eₙ`. It only bounds `λ(a)` from below and is
/// strictly weaker than [`attaining_decomposition`] off the sphere.
pub fn greedy_decomposition(a: &ComplexMatrix) -> Result<AmenableTriplet> {
    let sys = svd(a)?;
    let raw: f64 = sys.values.iter().sum();
    let (n1, m1, _, extreme) = trace_class_value(raw, sys.max_value())?;
    let (rows, cols) = a.shape();
    let scale = if raw > 1.0 { 1.0 / raw } else { 1.0 };
    if extreme {
        return Ok(AmenableTriplet { t: 1.0, e: a.scale(scale), y: ComplexMatrix::zeros(rows, cols) });
    }
    if n1 == 0.0 {
        return Err(Error::Degenerate(
            "the zero matrix has no positive greedy weight".into(),
        ));
    }
    if m1 >= 1.0 - EXTREME_TOL {
        return Err(Error::Degenerate(format!("μ₁ = {m1} leaves no room for the remainder")));
    }
    let e = sys.rank_one_term(0);
    let mut y = ComplexMatrix::zeros(rows, cols);
    for (k, &s) in sys.values.iter().enumerate().skip(1) {
        if s != 0.0 {
            y = y.add_scaled(s * scale / (1.0 - m1), &sys.rank_one_term(k));
        }
    }
    Ok(AmenableTriplet { t: m1, e, y })
}

/// Attaining decomposition on the operator-norm ball: `e` is the unitary
/// polar factor of `a`, `t = (1 + m_q(a))/2` and `y = (a − t·e)/(1 − t)`.
pub fn operator_decomposition(a: &ComplexMatrix) -> Result<AmenableTriplet> {
    Ok(lambda_operator_norm(a)?.witness.expect("operator form always carries a witness"))
}

pub(crate) fn operator_decomposition_from_svd(
    a: &ComplexMatrix,
    sys: &SingularSystem,
    scale: f64,
    t: f64,
) -> AmenableTriplet {
    let n = a.rows();
    let mut u = ComplexMatrix::zeros(n, n);
    for k in 0..sys.values.len() {
        u = u.add_scaled(1.0, &sys.rank_one_term(k));
    }
    if t >= 1.0 {
        return AmenableTriplet { t: 1.0, e: u, y: ComplexMatrix::zeros(n, n) };
    }
    let y = a.scale(scale).add_scaled(-t, &u).scale(1.0 / (1.0 - t));
    AmenableTriplet { t, e: u, y }
}
