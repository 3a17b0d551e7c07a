//! Seeded random matrix ensembles.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::lambda::BallNorm;
use crate::linalg::{dot, rank_one, vec_norm, ComplexMatrix, C64};

/// Generator for trial `trial` of a campaign seeded with `seed`. Trials use
/// disjoint ChaCha streams, so they can run in any order.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

pub fn complex_normal<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    C64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// Ginibre matrix: i.i.d. standard complex normal entries, or standard real
/// normal entries when `real` is set.
pub fn ginibre<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize, real: bool) -> ComplexMatrix {
    let data = (0..rows * cols)
        .map(|_| {
            if real {
                C64::new(rng.sample(StandardNormal), 0.0)
            } else {
                complex_normal(rng)
            }
        })
        .collect();
    ComplexMatrix::from_vec(rows, cols, data).expect("finite Gaussian samples")
}

pub fn random_hermitian<R: Rng + ?Sized>(rng: &mut R, n: usize, real: bool) -> ComplexMatrix {
    let g = ginibre(rng, n, n, real);
    g.add_scaled(1.0, &g.adjoint()).scale(0.5)
}

/// Uniformly distributed unit vector of `C^n`.
pub fn random_unit_vector<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<C64> {
    loop {
        let v: Vec<C64> = (0..n).map(|_| complex_normal(rng)).collect();
        let norm = vec_norm(&v);
        if norm > 1e-8 {
            return v.into_iter().map(|z| z / norm).collect();
        }
    }
}

/// Random minimal partial isometry `u · v*`.
pub fn random_rank_one<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> ComplexMatrix {
    let u = random_unit_vector(rng, rows);
    let v = random_unit_vector(rng, cols);
    rank_one(&u, &v).expect("unit vectors")
}

/// Haar-distributed unitary: Gram-Schmidt on a Ginibre matrix. Columns are
/// orthonormalized in order, which fixes the triangular factor to have a
/// positive diagonal.
pub fn haar_unitary<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ComplexMatrix {
    loop {
        let g = ginibre(rng, n, n, false);
        let mut cols: Vec<Vec<C64>> = Vec::with_capacity(n);
        let mut ok = true;
        for j in 0..n {
            let mut c = g.column(j);
            for _ in 0..2 {
                for q in &cols {
                    let r = dot(q, &c);
                    for (ck, qk) in c.iter_mut().zip(q) {
                        *ck -= qk * r;
                    }
                }
            }
            let norm = vec_norm(&c);
            if norm < 1e-8 {
                ok = false;
                break;
            }
            cols.push(c.into_iter().map(|z| z / norm).collect());
        }
        if ok {
            let mut u = ComplexMatrix::zeros(n, n);
            for (j, c) in cols.iter().enumerate() {
                for (i, z) in c.iter().enumerate() {
                    u[(i, j)] = *z;
                }
            }
            return u;
        }
    }
}

/// Rescales a nonzero `a` so that `norm(a) = target`.
pub fn scale_to_norm(a: &ComplexMatrix, norm: BallNorm, target: f64) -> ComplexMatrix {
    let current = norm.norm(a);
    assert!(current > 0.0, "cannot rescale the zero matrix");
    let scaled = a.scale(target / current);
    // one correction step absorbs the rounding of the first division
    let again = norm.norm(&scaled);
    if again > target {
        scaled.scale(target / again)
    } else {
        scaled
    }
}

/// Where in the ball a sample is placed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BallPlacement {
    /// Norm drawn from `Uniform[0.1, 1.0]`.
    Interior,
    /// Norm pinned to 1.
    Sphere,
}

impl BallPlacement {
    /// Every tenth trial lands on the sphere.
    pub fn for_trial(trial: u64) -> Self {
        if trial % 10 == 9 {
            BallPlacement::Sphere
        } else {
            BallPlacement::Interior
        }
    }
}

/// Ginibre sample rescaled into the unit ball of `norm`.
pub fn random_ball_element<R: Rng + ?Sized>(
    rng: &mut R,
    rows: usize,
    cols: usize,
    norm: BallNorm,
    real: bool,
    placement: BallPlacement,
) -> ComplexMatrix {
    let g = ginibre(rng, rows, cols, real);
    let target = match placement {
        BallPlacement::Interior => rng.random_range(0.1..=1.0),
        BallPlacement::Sphere => 1.0,
    };
    scale_to_norm(&g, norm, target)
}
