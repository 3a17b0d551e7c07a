//! Dense complex matrix analysis for the lambda-function of Schatten-class
//! unit balls.
//!
//! The crate is split in three layers:
//!
//! * [`linalg`]: a small self-contained complex linear algebra kernel
//!   (one-sided Jacobi SVD, Hermitian Jacobi eigensolver, Schatten norms,
//!   rank-one partial isometries, the Hermitian dilation `[[0, a], [a*, 0]]`).
//! * [`lambda`]: closed forms for `λ(x) = sup{t : x = t·e + (1−t)·y}` on the
//!   trace-class ball, the Schatten `p`-balls, the operator-norm ball and the
//!   scalar `ℓ₁` / `ℓ∞` sequence balls, plus the decompositions that attain
//!   or bound it.
//! * [`oracle`]: independent checks. A bisection/pattern-search estimate of
//!   `λ` over extreme points, an amenability checker, and seeded fuzzing of
//!   the singular value perturbation inequalities the closed forms rest on.

pub mod error;
pub mod lambda;
pub mod linalg;
pub mod oracle;

pub use error::{Error, Result};
pub use lambda::{AmenableTriplet, Branch, LambdaResult};
pub use linalg::{ComplexMatrix, EigenEnumeration, SingularSystem};
