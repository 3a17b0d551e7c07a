use super::matrix::ComplexMatrix;
use super::svd::singular_values;
use crate::error::{Error, Result};

pub(crate) fn check_p(p: f64) -> Result<()> {
    if p.is_nan() || p < 1.0 {
        return Err(Error::InvalidParameter(format!("Schatten index p must lie in [1, ∞], got {p}")));
    }
    Ok(())
}

/// `(Σ s_k^p)^{1/p}` over already computed singular values (`max` for `p = ∞`).
///
/// `p = 1` sums the values in the order given, so callers that need a
/// reproducible trace norm pass them sorted nonincreasing.
pub fn schatten_from_values(values: &[f64], p: f64) -> Result<f64> {
    check_p(p)?;
    Ok(if p == f64::INFINITY {
        values.iter().copied().fold(0.0, f64::max)
    } else if p == 1.0 {
        values.iter().sum()
    } else if p == 2.0 {
        values.iter().map(|s| s * s).sum::<f64>().sqrt()
    } else {
        values.iter().map(|s| s.powf(p)).sum::<f64>().powf(1.0 / p)
    })
}

/// `Σ s_k^p`, the p-th power of the Schatten norm, for finite `p ≥ 1`.
pub fn schatten_pow_from_values(values: &[f64], p: f64) -> Result<f64> {
    check_p(p)?;
    if p.is_infinite() {
        return Err(Error::InvalidParameter("p-th power needs a finite p".into()));
    }
    Ok(if p == 1.0 { values.iter().sum() } else { values.iter().map(|s| s.powf(p)).sum() })
}

/// Schatten `p`-norm; `f64::INFINITY` selects the operator norm.
pub fn schatten_norm(a: &ComplexMatrix, p: f64) -> Result<f64> {
    check_p(p)?;
    schatten_from_values(&singular_values(a), p)
}

pub fn trace_norm(a: &ComplexMatrix) -> f64 {
    singular_values(a).iter().sum()
}

pub fn operator_norm(a: &ComplexMatrix) -> f64 {
    singular_values(a)[0]
}
