use serde::Serialize;

use crate::error::{Error, Result};
use crate::lambda::{AmenableTriplet, BallNorm};
use crate::linalg::{singular_values, trace_norm, ComplexMatrix};

/// Default tolerance for [`amenability_check`].
pub const AMENABILITY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AmenabilityReport {
    pub ok: bool,
    /// `‖a − (t·e + (1−t)·y)‖₁`.
    pub residual: f64,
    /// `max(0, ‖y‖ − 1)` in the ball norm.
    pub ball_excess: f64,
    /// Distance of the singular values of `e` from those of an extreme point.
    pub extreme_defect: f64,
}

/// Largest deviation of the spectrum of `e` from an extreme point of the
/// ball: `(1, 0, …, 0)` for the trace norm, all ones for the operator norm.
pub fn extreme_defect(e: &ComplexMatrix, norm: BallNorm) -> f64 {
    let sv = singular_values(e);
    match norm {
        BallNorm::Trace => sv
            .iter()
            .enumerate()
            .map(|(k, s)| if k == 0 { (s - 1.0).abs() } else { *s })
            .fold(0.0, f64::max),
        BallNorm::Operator => {
            if !e.is_square() {
                return f64::INFINITY;
            }
            sv.iter().map(|s| (s - 1.0).abs()).fold(0.0, f64::max)
        }
    }
}

/// Checks that `(e, y, t)` decomposes `a` with `e` extreme and `y` in the
/// ball of `norm`, everything to `tol`.
pub fn amenability_check(
    a: &ComplexMatrix,
    triplet: &AmenableTriplet,
    norm: BallNorm,
    tol: f64,
) -> Result<AmenabilityReport> {
    a.ensure_same_shape(&triplet.e)?;
    a.ensure_same_shape(&triplet.y)?;
    if !(0.0..=1.0).contains(&triplet.t) {
        return Err(Error::InvalidInput(format!("weight t = {} is outside [0, 1]", triplet.t)));
    }
    let residual = trace_norm(&(a - &triplet.combine()));
    let ball_excess = (norm.norm(&triplet.y) - 1.0).max(0.0);
    let extreme_defect = extreme_defect(&triplet.e, norm);
    Ok(AmenabilityReport {
        ok: residual <= tol && ball_excess <= tol && extreme_defect <= tol,
        residual,
        ball_excess,
        extreme_defect,
    })
}
