//! Seeded generators for smooth, boundary-decayed test fields.
//!
//! A generated field is a mixture of Gaussians with randomized centers,
//! widths, and amplitudes. The mixture is stored analytically so the same
//! continuum function can be realized on any grid (refinement studies).

use crate::grid::{Field, GridSpec};
use crate::scalar::{cast, Scalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// One randomized smooth bump mixture.
#[derive(Debug, Clone)]
pub struct FieldGen {
    dim: usize,
    bumps: Vec<([f64; 3], f64, f64)>, // center, width, amplitude
}

impl FieldGen {
    /// Mixture over the core of a box of half-length `l`. `signed` controls
    /// whether amplitudes may be negative.
    pub fn sample(seed: u64, dim: usize, l: f64, signed: bool) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let count = rng.gen_range(3..=6);
        let bumps = (0..count)
            .map(|_| {
                let mut c = [0.0; 3];
                for cd in c.iter_mut().take(dim) {
                    *cd = rng.gen_range(-0.2 * l..0.2 * l);
                }
                let w = rng.gen_range(l / 16.0..l / 9.0);
                let a = if signed {
                    let a = rng.gen_range(0.25..1.0);
                    if rng.gen_bool(0.5) {
                        -a
                    } else {
                        a
                    }
                } else {
                    rng.gen_range(0.25..1.0)
                };
                (c, w, a)
            })
            .collect();
        Self { dim, bumps }
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        self.bumps
            .iter()
            .map(|(c, w, a)| {
                let r2: f64 = (0..self.dim).map(|d| (x[d] - c[d]).powi(2)).sum();
                a * (-r2 / (2.0 * w * w)).exp()
            })
            .sum()
    }

    pub fn realize<T: Scalar>(&self, grid: GridSpec<T>) -> Field<T> {
        assert_eq!(grid.dim(), self.dim);
        Field::from_fn(grid, |x| {
            let mut xf = [0.0; 3];
            for (d, &v) in x.iter().enumerate() {
                xf[d] = v.to_double();
            }
            cast(self.eval(&xf[..self.dim]))
        })
    }
}

/// Convenience: realize a signed mixture directly.
pub fn smooth_field<T: Scalar>(grid: GridSpec<T>, seed: u64) -> Field<T> {
    FieldGen::sample(seed, grid.dim(), grid.half_length().to_double(), true).realize(grid)
}

/// Convenience: realize a nonnegative mixture (D > 0 for sign-definite F).
pub fn smooth_positive_field<T: Scalar>(grid: GridSpec<T>, seed: u64) -> Field<T> {
    FieldGen::sample(seed, grid.dim(), grid.half_length().to_double(), false).realize(grid)
}
