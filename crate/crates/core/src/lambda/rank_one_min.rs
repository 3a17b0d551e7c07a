use crate::error::{Error, Result};
use crate::linalg::{singular_values, svd, schatten_pow_from_values, ComplexMatrix};

/// Closed-form minimum of `f_{a,t}(e) = ‖a − t·e‖_p^p` over minimal partial
/// isometries `e`, and the `e = η₁ ⊗ ξ₁` attaining it.
#[derive(Debug, Clone, PartialEq)]
pub struct RankOneMinimum {
    pub value: f64,
    pub argmin: ComplexMatrix,
}

fn check_args(t: f64, p: f64) -> Result<()> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::InvalidParameter(format!("t must be a positive real, got {t}")));
    }
    if !(p >= 1.0 && p.is_finite()) {
        return Err(Error::InvalidParameter(format!("p must lie in [1, ∞), got {p}")));
    }
    Ok(())
}

/// `f_{a,t}(e) = ‖a − t·e‖_p^p`.
pub fn rank_one_distance(a: &ComplexMatrix, e: &ComplexMatrix, t: f64, p: f64) -> Result<f64> {
    check_args(t, p)?;
    a.ensure_same_shape(e)?;
    schatten_pow_from_values(&singular_values(&a.add_scaled(-t, e)), p)
}

/// `min_e ‖a − t·e‖_p^p = |t − μ₁|^p + Σ_{j≥2} μ_j^p`, attained at the top
/// singular pair of `a`.
pub fn min_rank_one_distance(a: &ComplexMatrix, t: f64, p: f64) -> Result<RankOneMinimum> {
    check_args(t, p)?;
    let sys = svd(a)?;
    let head = (t - sys.values[0]).abs().powf(p);
    let tail = schatten_pow_from_values(&sys.values[1..], p)?;
    Ok(RankOneMinimum { value: head + tail, argmin: sys.rank_one_term(0) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{rank_one, C64};
    use approx::assert_abs_diff_eq;

    #[test]
    fn diagonal_examples() {
        let a = ComplexMatrix::from_diagonal(&[0.5, 0.3]).unwrap();
        let m = min_rank_one_distance(&a, 0.9, 1.0).unwrap();
        assert_abs_diff_eq!(m.value, 0.7, epsilon = 1e-15);
        let m = min_rank_one_distance(&a, 1.0, 2.0).unwrap();
        assert_abs_diff_eq!(m.value, 0.34, epsilon = 1e-15);
        let f = rank_one_distance(&a, &m.argmin, 1.0, 2.0).unwrap();
        assert_abs_diff_eq!(f, m.value, epsilon = 1e-15);
    }

    #[test]
    fn exact_multiple_has_zero_distance() {
        let s = 0.5f64.sqrt();
        let e = rank_one(&[C64::new(s, 0.0), C64::new(0.0, s)], &[C64::new(1.0, 0.0), C64::new(0.0, 0.0)]).unwrap();
        let a = e.scale(0.37);
        let m = min_rank_one_distance(&a, 0.37, 3.0).unwrap();
        assert!(m.value < 1e-40);
    }

    #[test]
    fn parameter_errors() {
        let a = ComplexMatrix::identity(2);
        assert!(matches!(min_rank_one_distance(&a, 0.0, 1.0), Err(Error::InvalidParameter(_))));
        assert!(matches!(min_rank_one_distance(&a, -1.0, 1.0), Err(Error::InvalidParameter(_))));
        assert!(matches!(min_rank_one_distance(&a, 1.0, f64::INFINITY), Err(Error::InvalidParameter(_))));
        assert!(min_rank_one_distance(&a, 1.0, 0.5).is_err());
    }
}
