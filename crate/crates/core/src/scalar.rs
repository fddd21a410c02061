//! Floating-point scalar abstraction: the whole crate is generic over the
//! grid value type, with `f64` the production choice and `f32` available for
//! quick low-precision experiments.

use num_traits::{Float, FloatConst};
use rustfft::FftNum;

/// Scalar type the spectral machinery runs on: f32 or f64.
pub trait Scalar: Float + FloatConst + FftNum + std::iter::Sum + std::fmt::Display {
    fn from_double(x: f64) -> Self;
    fn to_double(self) -> f64;

    /// Natural log of the Gamma function for strictly positive arguments.
    fn log_gamma(self) -> Self;
}

impl Scalar for f64 {
    #[inline]
    fn from_double(x: f64) -> Self {
        x
    }
    #[inline]
    fn to_double(self) -> f64 {
        self
    }
    fn log_gamma(self) -> Self {
        ln_gamma_f64(self)
    }
}

impl Scalar for f32 {
    #[inline]
    fn from_double(x: f64) -> Self {
        x as f32
    }
    #[inline]
    fn to_double(self) -> f64 {
        self as f64
    }
    fn log_gamma(self) -> Self {
        ln_gamma_f64(self as f64) as f32
    }
}

/// Shorthand for pulling f64 literals into the generic scalar type.
#[inline]
pub fn cast<T: Scalar>(x: f64) -> T {
    T::from_double(x)
}

/// Lanczos g=7, n=9 coefficients (Godfrey). Relative accuracy ~1e-14 on the
/// positive real axis.
const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

fn ln_gamma_f64(x: f64) -> f64 {
    assert!(x > 0.0, "ln_gamma requires a positive argument, got {x}");
    if x < 0.5 {
        // reflection keeps the Lanczos series in its accurate range
        return std::f64::consts::PI.ln()
            - (std::f64::consts::PI * x).sin().ln()
            - ln_gamma_f64(1.0 - x);
    }
    let x = x - 1.0;
    let mut acc = LANCZOS_COEF[0];
    for (i, &c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        acc += c / (x + i as f64);
    }
    let t = x + LANCZOS_G + 0.5;
    0.5 * (2.0 * std::f64::consts::PI).ln() + (x + 0.5) * t.ln() - t + acc.ln()
}

/// Sum with pairwise recursion; keeps the rounding error at O(log n) ulps so
/// the 1e-12 linearity and identity tolerances hold on large grids.
pub fn pairwise_sum<T: Scalar>(xs: &[T]) -> T {
    if xs.len() <= 32 {
        let mut s = T::zero();
        for &x in xs {
            s = s + x;
        }
        return s;
    }
    let mid = xs.len() / 2;
    pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn ln_gamma_matches_known_values() {
        assert_relative_eq!(ln_gamma_f64(1.0), 0.0, epsilon = 1e-14);
        assert_relative_eq!(ln_gamma_f64(2.0), 0.0, epsilon = 1e-14);
        assert_relative_eq!(ln_gamma_f64(5.0), 24.0_f64.ln(), max_relative = 1e-13);
        // Gamma(1/2) = sqrt(pi)
        assert_relative_eq!(
            ln_gamma_f64(0.5),
            std::f64::consts::PI.sqrt().ln(),
            max_relative = 1e-13
        );
        // Gamma(1/4) = 3.6256099082219083119...
        assert_relative_eq!(
            ln_gamma_f64(0.25).exp(),
            3.625_609_908_221_908_3,
            max_relative = 1e-12
        );
        // recurrence Gamma(x+1) = x Gamma(x) across the reflection split
        for &x in &[0.1, 0.3, 0.49, 0.51, 0.9, 1.7, 3.3] {
            assert_relative_eq!(
                ln_gamma_f64(x + 1.0),
                ln_gamma_f64(x) + x.ln(),
                max_relative = 1e-12
            );
        }
    }

    #[test]
    fn pairwise_sum_is_accurate() {
        let xs: Vec<f64> = (0..1_000_000).map(|i| 1e-6 * (i % 7) as f64).collect();
        let exact: f64 = 1e-6 * (0..1_000_000).map(|i| (i % 7) as f64).sum::<f64>();
        assert_relative_eq!(pairwise_sum(&xs), exact, max_relative = 1e-13);
    }
}
