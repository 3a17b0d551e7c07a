//! Rank-one partial isometries, the Hermitian dilation and orthogonality.

use super::matrix::{vec_norm, ComplexMatrix, C64};
use super::svd::outer;
use crate::error::{Error, Result};

/// Tolerance on `‖u‖ = 1` accepted by [`rank_one`].
pub const UNIT_TOL: f64 = 1e-10;

/// The minimal partial isometry `u · v*`, acting as `w ↦ ⟨w, v⟩ u`.
///
/// Inputs must be unit vectors to `UNIT_TOL`; they are renormalized so the
/// output has singular values exactly `(1, 0, …)` up to rounding.
pub fn rank_one(u: &[C64], v: &[C64]) -> Result<ComplexMatrix> {
    if u.is_empty() || v.is_empty() {
        return Err(Error::InvalidInput("rank_one needs non-empty vectors".into()));
    }
    let (nu, nv) = (vec_norm(u), vec_norm(v));
    if !nu.is_finite() || !nv.is_finite() || (nu - 1.0).abs() > UNIT_TOL || (nv - 1.0).abs() > UNIT_TOL {
        return Err(Error::InvalidInput(format!(
            "rank_one needs unit vectors, got norms {nu} and {nv}"
        )));
    }
    let u: Vec<C64> = u.iter().map(|z| z / nu).collect();
    let v: Vec<C64> = v.iter().map(|z| z / nv).collect();
    Ok(outer(&u, &v))
}

/// `E_{ij}`-style rank one built from standard basis vectors `e_i e_j*`.
pub fn basis_rank_one(rows: usize, cols: usize, i: usize, j: usize) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(rows, cols);
    m[(i, j)] = C64::new(1.0, 0.0);
    m
}

/// The Hermitian block matrix `[[0, a], [a*, 0]]` of size `2n`.
pub fn wielandt_dilation(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    a.ensure_square()?;
    let n = a.rows();
    let mut out = ComplexMatrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            out[(i, n + j)] = a[(i, j)];
            out[(n + j, i)] = a[(i, j)].conj();
        }
    }
    Ok(out)
}

/// `max(‖a·b*‖₂, ‖b*·a‖₂)` in the Hilbert-Schmidt norm; zero exactly when
/// `a` and `b` are orthogonal (`a·b* = b*·a = 0`).
pub fn orthogonality_defect(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<f64> {
    a.ensure_same_shape(b)?;
    let bs = b.adjoint();
    let left = a.matmul(&bs)?;
    let right = bs.matmul(a)?;
    Ok(left.frobenius_norm().max(right.frobenius_norm()))
}
