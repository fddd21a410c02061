//! Internal n-dimensional complex FFT built on per-axis 1D transforms.
//! All axes of a grid share one length, so a plan pair covers a whole grid.

use crate::grid::Field;
use crate::scalar::{cast, Scalar};
use num_complex::Complex;
use rustfft::{Fft, FftDirection, FftPlanner};
use std::sync::Arc;

pub(crate) struct PlanPair<T: Scalar> {
    pub forward: Arc<dyn Fft<T>>,
    pub inverse: Arc<dyn Fft<T>>,
    pub n: usize,
}

impl<T: Scalar> PlanPair<T> {
    pub fn new(n: usize) -> Self {
        let mut planner = FftPlanner::new();
        Self {
            forward: planner.plan_fft(n, FftDirection::Forward),
            inverse: planner.plan_fft(n, FftDirection::Inverse),
            n,
        }
    }
}

/// Apply the 1D transform along every axis of a cube of side `n` in `ndim`
/// dimensions (row-major). Unnormalized; inverse callers divide by n^ndim.
pub(crate) fn transform_nd<T: Scalar>(
    data: &mut [Complex<T>],
    ndim: usize,
    n: usize,
    fft: &Arc<dyn Fft<T>>,
) {
    let total = data.len();
    debug_assert_eq!(total, n.pow(ndim as u32));
    let mut scratch = vec![Complex::new(T::zero(), T::zero()); fft.get_inplace_scratch_len()];
    // last axis is contiguous: one batched call
    fft.process_with_scratch(data, &mut scratch);
    let mut line = vec![Complex::new(T::zero(), T::zero()); n];
    for axis in (0..ndim.saturating_sub(1)).rev() {
        let stride = n.pow((ndim - 1 - axis) as u32);
        let block = stride * n;
        for outer in (0..total).step_by(block) {
            for inner in 0..stride {
                let base = outer + inner;
                for (k, v) in line.iter_mut().enumerate() {
                    *v = data[base + k * stride];
                }
                fft.process_with_scratch(&mut line, &mut scratch);
                for (k, v) in line.iter().enumerate() {
                    data[base + k * stride] = *v;
                }
            }
        }
    }
}

pub(crate) fn to_complex<T: Scalar>(values: &[T]) -> Vec<Complex<T>> {
    values.iter().map(|&v| Complex::new(v, T::zero())).collect()
}

/// Real part of an inverse-transform result, with the 1/n^ndim scaling and
/// the spectral-leak check (imaginary residue vs 1e-10 of max magnitude).
pub(crate) fn real_part_checked<T: Scalar>(
    buf: &[Complex<T>],
    scale: T,
) -> crate::error::Result<Vec<T>> {
    let mut max_re = T::zero();
    let mut max_im = T::zero();
    for c in buf {
        max_re = max_re.max(c.re.abs());
        max_im = max_im.max(c.im.abs());
    }
    if max_re > T::zero() && max_im > cast::<T>(1e-10) * max_re {
        return Err(crate::error::FchqError::SpectralLeak {
            ratio: (max_im / max_re).to_double(),
        });
    }
    Ok(buf.iter().map(|c| c.re * scale).collect())
}

/// Forward DFT coefficients of a field (unnormalized), FFT frequency order.
pub(crate) fn forward_coeffs<T: Scalar>(u: &Field<T>) -> Vec<Complex<T>> {
    let g = u.grid();
    let plans = PlanPair::new(g.points_per_axis());
    let mut buf = to_complex(u.values());
    transform_nd(&mut buf, g.dim(), g.points_per_axis(), &plans.forward);
    buf
}
