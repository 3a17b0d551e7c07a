use std::cmp::Ordering;

use super::matrix::{dot, vec_norm, ComplexMatrix, C64, ONE, ZERO};
use crate::error::Result;

/// Pairwise orthogonality threshold for the one-sided Jacobi sweeps:
/// a column pair is rotated while `|⟨w_p, w_q⟩| > tol · ‖w_p‖ ‖w_q‖`.
pub const JACOBI_TOL: f64 = 1e-12;

/// Singular values below `RANK_CUTOFF · μ₁` count as zero in rank and
/// invertibility decisions.
pub const RANK_CUTOFF: f64 = 1e-12;

const MAX_SWEEPS: usize = 80;

// Columns whose norm falls below this fraction of the largest are replaced
// by a completed orthonormal direction; their own direction is noise.
const NULL_COLUMN_RATIO: f64 = 1e-14;

// Relative spread under which two singular values are considered tied.
const TIE_TOL: f64 = 1e-13;

/// Singular value decomposition `a = Σ_k values[k] · left[k] · right[k]*`.
///
/// `values` is nonincreasing and has `min(rows, cols)` entries. `left[k]`
/// has length `rows`, `right[k]` has length `cols`.
#[derive(Debug, Clone, PartialEq)]
pub struct SingularSystem {
    pub values: Vec<f64>,
    pub left: Vec<Vec<C64>>,
    pub right: Vec<Vec<C64>>,
}

impl SingularSystem {
    pub fn rows(&self) -> usize {
        self.left.first().map_or(0, Vec::len)
    }

    pub fn cols(&self) -> usize {
        self.right.first().map_or(0, Vec::len)
    }

    /// Largest singular value (operator norm).
    pub fn max_value(&self) -> f64 {
        self.values.first().copied().unwrap_or(0.0)
    }

    /// `left[k] · right[k]*`, the k-th minimal partial isometry of the resolution.
    pub fn rank_one_term(&self, k: usize) -> ComplexMatrix {
        outer(&self.left[k], &self.right[k])
    }

    /// Number of singular values above `RANK_CUTOFF · μ₁`.
    pub fn rank(&self) -> usize {
        let mu1 = self.max_value();
        if mu1 == 0.0 {
            return 0;
        }
        self.values.iter().filter(|&&s| s > RANK_CUTOFF * mu1).count()
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        let (m, n) = (self.rows(), self.cols());
        let mut out = ComplexMatrix::zeros(m, n);
        for (k, &s) in self.values.iter().enumerate() {
            if s == 0.0 {
                continue;
            }
            for i in 0..m {
                let ui = self.left[k][i] * s;
                for j in 0..n {
                    out[(i, j)] += ui * self.right[k][j].conj();
                }
            }
        }
        out
    }
}

/// `u · v*`: the operator `w ↦ ⟨w, v⟩ u` with `⟨w, v⟩ = Σ conj(v_i) w_i`.
pub(crate) fn outer(u: &[C64], v: &[C64]) -> ComplexMatrix {
    let mut out = ComplexMatrix::zeros(u.len(), v.len());
    for (i, &ui) in u.iter().enumerate() {
        for (j, &vj) in v.iter().enumerate() {
            out[(i, j)] = ui * vj.conj();
        }
    }
    out
}

/// Full singular value decomposition by one-sided (Hestenes) Jacobi.
///
/// Output is deterministic: each left vector is phase-rotated so that its
/// largest-modulus component is real positive, and pairs with tied
/// singular values are ordered lexicographically by their left vector.
pub fn svd(a: &ComplexMatrix) -> Result<SingularSystem> {
    let (m, n) = a.shape();
    let mut sys = if m >= n {
        let (values, left, right) = tall_svd(a);
        SingularSystem { values, left, right }
    } else {
        // a* = U Σ V*  gives  a = V Σ U*.
        let (values, left, right) = tall_svd(&a.adjoint());
        SingularSystem { values, left: right, right: left }
    };
    normalize_phases(&mut sys);
    order_ties(&mut sys);
    Ok(sys)
}

/// Singular values only, in nonincreasing order.
pub fn singular_values(a: &ComplexMatrix) -> Vec<f64> {
    let (m, n) = a.shape();
    let mut cols = if m >= n { columns(a) } else { columns(&a.adjoint()) };
    jacobi_sweeps(&mut cols, None);
    let mut values: Vec<f64> = cols.iter().map(|c| vec_norm(c)).collect();
    values.sort_by(|x, y| y.total_cmp(x));
    values
}

fn columns(a: &ComplexMatrix) -> Vec<Vec<C64>> {
    (0..a.cols()).map(|j| a.column(j)).collect()
}

fn tall_svd(a: &ComplexMatrix) -> (Vec<f64>, Vec<Vec<C64>>, Vec<Vec<C64>>) {
    let (m, n) = a.shape();
    let mut w = columns(a);
    let mut v: Vec<Vec<C64>> = (0..n)
        .map(|j| {
            let mut e = vec![ZERO; n];
            e[j] = ONE;
            e
        })
        .collect();
    jacobi_sweeps(&mut w, Some(&mut v));

    let norms: Vec<f64> = w.iter().map(|c| vec_norm(c)).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| norms[j].total_cmp(&norms[i]));
    let max = norms[order[0]];

    let mut values = Vec::with_capacity(n);
    let mut left: Vec<Vec<C64>> = Vec::with_capacity(n);
    let mut right = Vec::with_capacity(n);
    let mut pending = Vec::new();
    for &j in &order {
        let s = norms[j];
        values.push(s);
        right.push(v[j].clone());
        if max > 0.0 && s > NULL_COLUMN_RATIO * max {
            left.push(w[j].iter().map(|z| z / s).collect());
        } else {
            pending.push(left.len());
            left.push(Vec::new());
        }
    }
    for idx in pending {
        let known: Vec<&Vec<C64>> = left.iter().filter(|u| !u.is_empty()).collect();
        let next = complete_orthonormal(&known, m);
        left[idx] = next;
    }
    (values, left, right)
}

/// Rotates column pairs of `w` (and the same pairs of `v`, when given)
/// until every pair is orthogonal to `JACOBI_TOL`.
fn jacobi_sweeps(w: &mut [Vec<C64>], mut v: Option<&mut [Vec<C64>]>) {
    let n = w.len();
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let alpha = w[p].iter().map(|z| z.norm_sqr()).sum::<f64>();
                let beta = w[q].iter().map(|z| z.norm_sqr()).sum::<f64>();
                if alpha == 0.0 || beta == 0.0 {
                    continue;
                }
                let gamma = dot(&w[p], &w[q]);
                let g = gamma.norm();
                if g <= JACOBI_TOL * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let phase = (gamma / g).conj();
                let zeta = (beta - alpha) / (2.0 * g);
                let t = zeta.signum() / (zeta.abs() + zeta.hypot(1.0));
                let c = 1.0 / t.hypot(1.0);
                let s = c * t;
                rotate_pair(w, p, q, c, s, phase);
                if let Some(v) = v.as_deref_mut() {
                    rotate_pair(v, p, q, c, s, phase);
                }
            }
        }
        if !rotated {
            break;
        }
    }
}

#[inline]
fn rotate_pair(cols: &mut [Vec<C64>], p: usize, q: usize, c: f64, s: f64, phase: C64) {
    let (lo, hi) = cols.split_at_mut(q);
    let (cp, cq) = (&mut lo[p], &mut hi[0]);
    for (x, y) in cp.iter_mut().zip(cq.iter_mut()) {
        let yt = *y * phase;
        let xp = *x;
        *x = xp * c - yt * s;
        *y = xp * s + yt * c;
    }
}

/// Returns a unit vector of length `dim` orthogonal to every vector in
/// `known`, taken from the standard basis vector with the largest residual.
pub(crate) fn complete_orthonormal(known: &[&Vec<C64>], dim: usize) -> Vec<C64> {
    let mut best: Option<(f64, Vec<C64>)> = None;
    for i in 0..dim {
        let mut r = vec![ZERO; dim];
        r[i] = ONE;
        // two passes of modified Gram-Schmidt
        for _ in 0..2 {
            for u in known {
                let c = dot(u, &r);
                for (rk, uk) in r.iter_mut().zip(u.iter()) {
                    *rk -= uk * c;
                }
            }
        }
        let nr = vec_norm(&r);
        if best.as_ref().is_none_or(|(b, _)| nr > *b + 1e-12) {
            best = Some((nr, r));
        }
    }
    let (nr, r) = best.expect("dim > 0");
    assert!(nr > 1e-8, "no orthogonal complement left to complete");
    r.into_iter().map(|z| z / nr).collect()
}

fn normalize_phases(sys: &mut SingularSystem) {
    for (u, v) in sys.left.iter_mut().zip(sys.right.iter_mut()) {
        let mut idx = 0;
        let mut best = -1.0;
        for (i, z) in u.iter().enumerate() {
            // strict comparison keeps the first component among near-equal maxima
            if z.norm() > best + 1e-14 {
                best = z.norm();
                idx = i;
            }
        }
        if best <= 0.0 {
            continue;
        }
        let phase = (u[idx] / u[idx].norm()).conj();
        for z in u.iter_mut() {
            *z *= phase;
        }
        u[idx] = C64::new(u[idx].re, 0.0);
        for z in v.iter_mut() {
            *z *= phase;
        }
    }
}

fn lex_cmp(a: &[C64], b: &[C64]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        for (p, q) in [(x.re, y.re), (x.im, y.im)] {
            if (p - q).abs() > 1e-12 {
                return q.total_cmp(&p);
            }
        }
    }
    Ordering::Equal
}

fn order_ties(sys: &mut SingularSystem) {
    let k = sys.values.len();
    let scale = sys.max_value().max(f64::MIN_POSITIVE);
    let mut start = 0;
    while start < k {
        let mut end = start + 1;
        while end < k && sys.values[end - 1] - sys.values[end] <= TIE_TOL * scale {
            end += 1;
        }
        if end - start > 1 {
            let mut group: Vec<(Vec<C64>, Vec<C64>)> = (start..end)
                .map(|i| (std::mem::take(&mut sys.left[i]), std::mem::take(&mut sys.right[i])))
                .collect();
            group.sort_by(|a, b| lex_cmp(&a.0, &b.0));
            for (off, (u, v)) in group.into_iter().enumerate() {
                sys.left[start + off] = u;
                sys.right[start + off] = v;
            }
        }
        start = end;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn orthonormality_defect(vs: &[Vec<C64>]) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..vs.len() {
            for j in 0..vs.len() {
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((dot(&vs[i], &vs[j]) - target).norm());
            }
        }
        worst
    }

    #[test]
    fn diagonal_input() {
        let a = ComplexMatrix::from_diagonal(&[0.5, 0.3]).unwrap();
        let s = svd(&a).unwrap();
        assert_eq!(s.values, vec![0.5, 0.3]);
    }

    #[test]
    fn nilpotent_partial_isometry() {
        let a = ComplexMatrix::from_real_rows(&[vec![0.0, 1.0], vec![0.0, 0.0]]).unwrap();
        let s = svd(&a).unwrap();
        assert_eq!(s.values, vec![1.0, 0.0]);
        assert!(orthonormality_defect(&s.left) < 1e-14);
        assert!((&s.reconstruct() - &a).frobenius_norm() < 1e-15);
    }

    #[test]
    fn zero_matrix_gets_standard_basis() {
        let s = svd(&ComplexMatrix::zeros(3, 2)).unwrap();
        assert_eq!(s.values, vec![0.0, 0.0]);
        assert!(orthonormality_defect(&s.left) < 1e-15);
        assert!(orthonormality_defect(&s.right) < 1e-15);
        assert_eq!(s.left[0][0], ONE);
    }

    #[test]
    fn wide_matrix() {
        let a = ComplexMatrix::from_vec(
            2,
            3,
            vec![
                C64::new(1.0, 2.0),
                C64::new(0.0, -1.0),
                C64::new(3.0, 0.5),
                C64::new(-0.5, 0.0),
                C64::new(2.0, 2.0),
                C64::new(0.0, 1.0),
            ],
        )
        .unwrap();
        let s = svd(&a).unwrap();
        assert_eq!(s.values.len(), 2);
        assert_eq!(s.left[0].len(), 2);
        assert_eq!(s.right[0].len(), 3);
        assert!((&s.reconstruct() - &a).frobenius_norm() < 1e-13);
        assert!(orthonormality_defect(&s.left) < 1e-12);
        assert!(orthonormality_defect(&s.right) < 1e-12);
        let vals = singular_values(&a);
        for (x, y) in vals.iter().zip(&s.values) {
            assert_abs_diff_eq!(x, y, epsilon = 1e-14);
        }
    }

    #[test]
    fn identity_tie_breaking_is_deterministic() {
        let s = svd(&ComplexMatrix::identity(3)).unwrap();
        for k in 0..3 {
            assert_eq!(s.left[k][k], ONE);
            assert_eq!(s.right[k][k], ONE);
        }
    }

    #[test]
    fn phase_normalized_left_vectors() {
        let a = ComplexMatrix::from_vec(
            2,
            2,
            vec![C64::new(0.0, 1.0), C64::new(0.3, 0.0), C64::new(0.1, -0.2), C64::new(0.0, 0.7)],
        )
        .unwrap();
        let s = svd(&a).unwrap();
        for u in &s.left {
            let big = u.iter().fold(ZERO, |acc, z| if z.norm() > acc.norm() + 1e-14 { *z } else { acc });
            assert_eq!(big.im, 0.0);
            assert!(big.re > 0.0);
        }
    }

    #[test]
    fn rank_respects_cutoff() {
        let a = ComplexMatrix::from_diagonal(&[0.9, 1e-14, 0.0]).unwrap();
        assert_eq!(svd(&a).unwrap().rank(), 1);
        let b = ComplexMatrix::from_diagonal(&[0.9, 1e-6]).unwrap();
        assert_eq!(svd(&b).unwrap().rank(), 2);
    }
}
