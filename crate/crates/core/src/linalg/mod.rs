//! Dense complex linear algebra on small matrices.

mod eigen;
mod matrix;
mod norms;
mod structure;
mod svd;

pub use eigen::{
    eigen_enumeration, hermitian_eigen, hermitian_eigenvalues, is_hermitian, EigenEnumeration,
    HermitianEigen, HERMITIAN_TOL,
};
pub(crate) use eigen::ensure_hermitian;
pub use matrix::{ComplexMatrix, MatrixFile, C64};
pub(crate) use matrix::{dot, vec_norm};
pub use norms::{
    operator_norm, schatten_from_values, schatten_norm, schatten_pow_from_values, trace_norm,
};
pub(crate) use norms::check_p;
pub use structure::{basis_rank_one, orthogonality_defect, rank_one, wielandt_dilation, UNIT_TOL};
pub use svd::{singular_values, svd, SingularSystem, JACOBI_TOL, RANK_CUTOFF};
