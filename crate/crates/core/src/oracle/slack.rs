//! Singular value and eigenvalue perturbation inequalities, evaluated on
//! concrete pairs with their slack.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{
    eigen_enumeration, ensure_hermitian, schatten_from_values, schatten_pow_from_values,
    singular_values, wielandt_dilation, ComplexMatrix,
};

/// Both sides of an inequality `lhs ≤ rhs` and `slack = rhs − lhs`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SlackReport {
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    pub p: f64,
    pub a: ComplexMatrix,
    pub b: ComplexMatrix,
    /// For the singular value form: largest deviation of the dilated
    /// Hermitian sides from twice the direct sides.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dilation_deviation: Option<f64>,
}

impl SlackReport {
    fn new(lhs: f64, rhs: f64, p: f64, a: &ComplexMatrix, b: &ComplexMatrix) -> Self {
        Self { lhs, rhs, slack: rhs - lhs, p, a: a.clone(), b: b.clone(), dilation_deviation: None }
    }
}

fn finite_p(p: f64) -> Result<()> {
    if !(p >= 1.0 && p.is_finite()) {
        return Err(Error::InvalidParameter(format!("p must lie in [1, ∞), got {p}")));
    }
    Ok(())
}

/// `‖diag μ(a) − diag μ(b)‖_p ≤ ‖a − b‖_p`, with `p = ∞` allowed.
pub fn mirsky_slack(a: &ComplexMatrix, b: &ComplexMatrix, p: f64) -> Result<SlackReport> {
    a.ensure_same_shape(b)?;
    let (sa, sb) = (singular_values(a), singular_values(b));
    let gaps: Vec<f64> = sa.iter().zip(&sb).map(|(x, y)| (x - y).abs()).collect();
    let lhs = schatten_from_values(&gaps, p)?;
    let rhs = schatten_from_values(&singular_values(&(a - b)), p)?;
    Ok(SlackReport::new(lhs, rhs, p, a, b))
}

/// `Σ|αₙ − βₙ|^p + Σ|α₋ₙ − β₋ₙ|^p ≤ ‖a − b‖_p^p` for Hermitian `a`, `b`,
/// with the signed zero-padded eigenvalue enumerations.
pub fn markus_slack(a: &ComplexMatrix, b: &ComplexMatrix, p: f64) -> Result<SlackReport> {
    finite_p(p)?;
    a.ensure_same_shape(b)?;
    ensure_hermitian(a)?;
    ensure_hermitian(b)?;
    let (ea, eb) = (eigen_enumeration(a)?, eigen_enumeration(b)?);
    let gaps: Vec<f64> = ea
        .positive
        .iter()
        .zip(&eb.positive)
        .chain(ea.negative.iter().zip(&eb.negative))
        .map(|(x, y)| (x - y).abs())
        .collect();
    let lhs = schatten_pow_from_values(&gaps, p)?;
    let rhs = schatten_pow_from_values(&singular_values(&(a - b)), p)?;
    Ok(SlackReport::new(lhs, rhs, p, a, b))
}

/// `Σ|μₙ(a) − μₙ(b)|^p ≤ ‖a − b‖_p^p`, cross-checked through the Hermitian
/// form applied to `[[0, a], [a*, 0]]` and `[[0, b], [b*, 0]]`, whose two
/// sides must be exactly twice the direct ones.
pub fn markus_singular_slack(a: &ComplexMatrix, b: &ComplexMatrix, p: f64) -> Result<SlackReport> {
    finite_p(p)?;
    a.ensure_same_shape(b)?;
    a.ensure_square()?;
    let (sa, sb) = (singular_values(a), singular_values(b));
    let gaps: Vec<f64> = sa.iter().zip(&sb).map(|(x, y)| (x - y).abs()).collect();
    let lhs = schatten_pow_from_values(&gaps, p)?;
    let rhs = schatten_pow_from_values(&singular_values(&(a - b)), p)?;
    let dilated = markus_slack(&wielandt_dilation(a)?, &wielandt_dilation(b)?, p)?;
    let deviation = (dilated.lhs - 2.0 * lhs).abs().max((dilated.rhs - 2.0 * rhs).abs());
    let mut report = SlackReport::new(lhs, rhs, p, a, b);
    report.dilation_deviation = Some(deviation);
    Ok(report)
}
