use super::matrix::{ComplexMatrix, C64, ZERO};
use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 100;

/// Hermitian tolerance: `‖h − h*‖₂ ≤ HERMITIAN_TOL · max(1, ‖h‖₂)`.
pub const HERMITIAN_TOL: f64 = 1e-10;

/// Eigenvalues (nonincreasing) and matching orthonormal eigenvectors of a
/// Hermitian matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: Vec<Vec<C64>>,
}

pub fn is_hermitian(h: &ComplexMatrix) -> bool {
    if !h.is_square() {
        return false;
    }
    let skew = h - &h.adjoint();
    skew.frobenius_norm() <= HERMITIAN_TOL * h.frobenius_norm().max(1.0)
}

pub(crate) fn ensure_hermitian(h: &ComplexMatrix) -> Result<()> {
    h.ensure_square()?;
    if !is_hermitian(h) {
        return Err(Error::InvalidInput("matrix is not Hermitian".into()));
    }
    Ok(())
}

/// Cyclic complex Jacobi eigensolver for Hermitian matrices.
///
/// The input is symmetrized as `(h + h*)/2` before iterating.
pub fn hermitian_eigen(h: &ComplexMatrix) -> Result<HermitianEigen> {
    ensure_hermitian(h)?;
    let n = h.rows();
    let mut a = h.add_scaled(1.0, &h.adjoint()).scale(0.5);
    let mut v = ComplexMatrix::identity(n);

    let total = a.frobenius_norm();
    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[(i, j)].norm_sqr())
            .sum::<f64>()
            .sqrt();
        if off <= 1e-15 * total || off == 0.0 {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                let g = apq.norm();
                if g == 0.0 {
                    continue;
                }
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                if g <= f64::EPSILON * 1e-3 * (app.abs() + aqq.abs()) {
                    a[(p, q)] = ZERO;
                    a[(q, p)] = ZERO;
                    continue;
                }
                // G = diag(1, e^{-iφ}) · [[c, s], [-s, c]] on the (p, q) plane,
                // which annihilates a[p][q] under a ← G* a G.
                let phase = (apq / g).conj();
                let theta = (aqq - app) / (2.0 * g);
                let t = theta.signum() / (theta.abs() + theta.hypot(1.0));
                let c = 1.0 / t.hypot(1.0);
                let s = c * t;
                let g_pp = C64::new(c, 0.0);
                let g_pq = C64::new(s, 0.0);
                let g_qp = phase * (-s);
                let g_qq = phase * c;
                for k in 0..n {
                    let (x, y) = (a[(k, p)], a[(k, q)]);
                    a[(k, p)] = x * g_pp + y * g_qp;
                    a[(k, q)] = x * g_pq + y * g_qq;
                }
                for k in 0..n {
                    let (x, y) = (a[(p, k)], a[(q, k)]);
                    a[(p, k)] = g_pp.conj() * x + g_qp.conj() * y;
                    a[(q, k)] = g_pq.conj() * x + g_qq.conj() * y;
                }
                a[(p, q)] = ZERO;
                a[(q, p)] = ZERO;
                a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
                a[(q, q)] = C64::new(a[(q, q)].re, 0.0);
                for k in 0..n {
                    let (x, y) = (v[(k, p)], v[(k, q)]);
                    v[(k, p)] = x * g_pp + y * g_qp;
                    v[(k, q)] = x * g_pq + y * g_qq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(j, j)].re.total_cmp(&a[(i, i)].re));
    Ok(HermitianEigen {
        values: order.iter().map(|&i| a[(i, i)].re).collect(),
        vectors: order.iter().map(|&i| v.column(i)).collect(),
    })
}

/// Eigenvalues only, nonincreasing.
pub fn hermitian_eigenvalues(h: &ComplexMatrix) -> Result<Vec<f64>> {
    Ok(hermitian_eigen(h)?.values)
}

/// Signed, zero-padded split of a Hermitian spectrum.
///
/// `positive` lists the positive eigenvalues in nonincreasing order and
/// `negative` the negative ones by nonincreasing modulus; both are padded
/// with zeros to the matrix dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenEnumeration {
    pub positive: Vec<f64>,
    pub negative: Vec<f64>,
}

impl EigenEnumeration {
    pub fn from_eigenvalues(values: &[f64]) -> Self {
        let n = values.len();
        let mut positive: Vec<f64> = values.iter().copied().filter(|&x| x > 0.0).collect();
        let mut negative: Vec<f64> = values.iter().copied().filter(|&x| x < 0.0).collect();
        positive.sort_by(|a, b| b.total_cmp(a));
        negative.sort_by(|a, b| a.total_cmp(b));
        positive.resize(n, 0.0);
        negative.resize(n, 0.0);
        Self { positive, negative }
    }

    pub fn dim(&self) -> usize {
        self.positive.len()
    }
}

pub fn eigen_enumeration(h: &ComplexMatrix) -> Result<EigenEnumeration> {
    Ok(EigenEnumeration::from_eigenvalues(&hermitian_eigenvalues(h)?))
}
