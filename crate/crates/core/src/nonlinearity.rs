//! Registry of Berestycki-Lions nonlinearities F, f = F' with declared
//! growth exponents, and the machine check of the admissibility conditions
//! (continuity, sub/supercritical growth windows, nontriviality, and the
//! at-least-quadratic origin condition).

use crate::error::{FchqError, Result};
use crate::grid::Field;
use crate::scalar::{cast, Scalar};
use crate::spectral::FracParams;
use serde::Serialize;

/// How the two powers of a double-power model combine.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PowerSign {
    Cooperating,
    Competing,
}

/// Tagged nonlinearity with growth-exponent metadata.
///
/// Conventions (r, h are the homogeneities of F, not f):
/// - `PurePower { r }`: F(t) = |t|^r / r, f(t) = t |t|^(r-2)
/// - `DoublePower { r, h, sign }`: F = |t|^r/r +- |t|^h/h with h > r
/// - `Saturable { scale: a }`: f(t) = t^3/(a^2 + t^2),
///   F(t) = (t^2 - a^2 ln(1 + t^2/a^2))/2
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum NonlinearityModel<T: Scalar> {
    PurePower { r: T },
    DoublePower { r: T, h: T, sign: PowerSign },
    Saturable { scale: T },
}

impl<T: Scalar> NonlinearityModel<T> {
    pub fn pure_power(r: T) -> Result<Self> {
        if !(r > T::one()) {
            return Err(FchqError::InvalidParams(format!("pure power needs r > 1, got {r}")));
        }
        Ok(Self::PurePower { r })
    }

    pub fn double_power(r: T, h: T, sign: PowerSign) -> Result<Self> {
        if !(r > T::one()) || !(h > r) {
            return Err(FchqError::InvalidParams(format!(
                "double power needs 1 < r < h, got r={r}, h={h}"
            )));
        }
        Ok(Self::DoublePower { r, h, sign })
    }

    pub fn saturable(scale: T) -> Result<Self> {
        if !(scale > T::zero()) {
            return Err(FchqError::InvalidParams(format!(
                "saturable scale must be positive, got {scale}"
            )));
        }
        Ok(Self::Saturable { scale })
    }

    /// F(t); exactly 0 at t = 0.
    pub fn big_f(&self, t: T) -> Result<T> {
        if t == T::zero() {
            return Ok(T::zero());
        }
        let v = match *self {
            Self::PurePower { r } => t.abs().powf(r) / r,
            Self::DoublePower { r, h, sign } => {
                let a = t.abs().powf(r) / r;
                let b = t.abs().powf(h) / h;
                match sign {
                    PowerSign::Cooperating => a + b,
                    PowerSign::Competing => a - b,
                }
            }
            Self::Saturable { scale } => {
                let a2 = scale * scale;
                let q = t * t / a2;
                cast::<T>(0.5) * (t * t - a2 * q.ln_1p())
            }
        };
        if v.is_finite() {
            Ok(v)
        } else {
            Err(FchqError::Overflow { t: t.to_double() })
        }
    }

    /// f(t) = F'(t).
    pub fn small_f(&self, t: T) -> Result<T> {
        if t == T::zero() {
            return Ok(T::zero());
        }
        let v = match *self {
            Self::PurePower { r } => t.signum() * t.abs().powf(r - T::one()),
            Self::DoublePower { r, h, sign } => {
                let a = t.abs().powf(r - T::one());
                let b = t.abs().powf(h - T::one());
                t.signum()
                    * match sign {
                        PowerSign::Cooperating => a + b,
                        PowerSign::Competing => a - b,
                    }
            }
            Self::Saturable { scale } => t * t * t / (scale * scale + t * t),
        };
        if v.is_finite() {
            Ok(v)
        } else {
            Err(FchqError::Overflow { t: t.to_double() })
        }
    }

    /// Apply F pointwise to a field.
    pub fn big_f_field(&self, u: &Field<T>) -> Result<Field<T>> {
        let vals: Result<Vec<T>> = u.values().iter().map(|&t| self.big_f(t)).collect();
        Field::from_values(*u.grid(), vals?)
    }

    /// Apply f pointwise to a field.
    pub fn small_f_field(&self, u: &Field<T>) -> Result<Field<T>> {
        let vals: Result<Vec<T>> = u.values().iter().map(|&t| self.small_f(t)).collect();
        Field::from_values(*u.grid(), vals?)
    }

    /// Declared homogeneity of F as t -> 0.
    pub fn exponent_at_zero(&self) -> f64 {
        match *self {
            Self::PurePower { r } => r.to_double(),
            Self::DoublePower { r, .. } => r.to_double(),
            Self::Saturable { .. } => 4.0,
        }
    }

    /// Declared homogeneity of F as |t| -> infinity.
    pub fn exponent_at_infinity(&self) -> f64 {
        match *self {
            Self::PurePower { r } => r.to_double(),
            Self::DoublePower { h, .. } => h.to_double(),
            Self::Saturable { .. } => 2.0,
        }
    }

    /// First t0 on a log grid (outward from 1, both signs of the exponent)
    /// with F(t0) > 0, falling back to F(t0) != 0.
    pub fn probe_t0(&self) -> Option<T> {
        let mut candidates = vec![0i32];
        for k in 1..=18 {
            candidates.push(k);
            candidates.push(-k);
        }
        let mut nonzero = None;
        for k in candidates {
            let t: T = cast(10f64.powf(k as f64 / 6.0));
            if let Ok(v) = self.big_f(t) {
                if v > cast(1e-14) {
                    return Some(t);
                }
                if v.abs() > cast::<T>(1e-14) && nonzero.is_none() {
                    nonzero = Some(t);
                }
            }
        }
        nonzero
    }
}

/// Outcome of one growth condition: pass, exactly-critical exponent, or fail.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Status {
    Holds,
    Critical,
    Fails,
}

impl Status {
    pub fn ok(&self) -> bool {
        !matches!(self, Status::Fails)
    }
}

/// Machine-checked admissibility of a model for given problem parameters.
#[derive(Debug, Clone, Serialize)]
pub struct AssumptionReport {
    pub f1: Status,
    pub f2_origin: Status,
    pub f2_infinity: Status,
    pub f3_origin: Status,
    pub f3_infinity: Status,
    pub f4: Status,
    pub f5: Status,
    /// admissible noncritical power window ((N+alpha)/N, (N+alpha)/(N-2s))
    pub window: (f64, f64),
    pub t0: Option<f64>,
}

impl AssumptionReport {
    pub fn all_hold(&self) -> bool {
        self.f1.ok()
            && self.f2_origin.ok()
            && self.f2_infinity.ok()
            && self.f3_origin.ok()
            && self.f3_infinity.ok()
            && self.f4.ok()
            && self.f5.ok()
    }
}

fn grade(exp: f64, bound: f64, above: bool) -> Status {
    let tol = 1e-12 * bound.abs().max(1.0);
    if (exp - bound).abs() <= tol {
        Status::Critical
    } else if (exp > bound) == above {
        Status::Holds
    } else {
        Status::Fails
    }
}

/// Decide the growth conditions analytically from the declared exponents
/// (corroborated numerically in tests; limits are not machine-decidable from
/// finitely many samples).
pub fn check_growth<T: Scalar>(m: &NonlinearityModel<T>, p: &FracParams<T>) -> AssumptionReport {
    let n = p.dim as f64;
    let (s, alpha) = (p.s.to_double(), p.alpha.to_double());
    let lo = (n + alpha) / n;
    let hi = (n + alpha) / (n - 2.0 * s);
    let e0 = m.exponent_at_zero();
    let einf = m.exponent_at_infinity();
    let t0 = m.probe_t0();
    AssumptionReport {
        f1: Status::Holds, // every registered model is C(R)
        f2_origin: grade(e0, lo, true),
        f2_infinity: grade(einf, hi, false),
        f3_origin: grade(e0, lo, true),
        f3_infinity: grade(einf, hi, false),
        f4: if t0.is_some() { Status::Holds } else { Status::Fails },
        f5: if e0 >= 2.0 - 1e-12 { Status::Holds } else { Status::Fails },
        window: (lo, hi),
        t0: t0.map(|t| t.to_double()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::adaptive_simpson;
    use approx::assert_relative_eq;

    type M = NonlinearityModel<f64>;

    fn default_params() -> FracParams<f64> {
        FracParams::new(2, 0.5, 1.0, 1.0).unwrap()
    }

    #[test]
    fn pure_power_values() {
        let m = M::pure_power(2.0).unwrap();
        assert_relative_eq!(m.big_f(3.0).unwrap(), 4.5);
        assert_relative_eq!(m.small_f(3.0).unwrap(), 3.0);
        assert_eq!(m.big_f(0.0).unwrap(), 0.0);
        assert_eq!(m.small_f(0.0).unwrap(), 0.0);
        // odd symmetry, exact
        let m = M::pure_power(2.6).unwrap();
        for t in [0.3, 1.7, 9.4] {
            assert_eq!(m.small_f(-t).unwrap(), -m.small_f(t).unwrap());
            assert_eq!(m.big_f(-t).unwrap(), m.big_f(t).unwrap());
        }
    }

    #[test]
    fn saturable_matches_quadrature() {
        let m = M::saturable(1.0).unwrap();
        assert_relative_eq!(m.small_f(1.0).unwrap(), 0.5);
        let f = |t: f64| t * t * t / (1.0 + t * t);
        let quad = adaptive_simpson(&f, 0.0, 1.0, 1e-12);
        assert_relative_eq!(m.big_f(1.0).unwrap(), quad, epsilon = 1e-10);
        // and at a larger argument
        let quad5 = adaptive_simpson(&f, 0.0, 5.0, 1e-12);
        assert_relative_eq!(m.big_f(5.0).unwrap(), quad5, epsilon = 1e-9);
    }

    #[test]
    fn derivative_consistency_all_models() {
        let models = [
            M::pure_power(2.0).unwrap(),
            M::pure_power(2.7).unwrap(),
            M::double_power(2.0, 2.5, PowerSign::Cooperating).unwrap(),
            M::double_power(2.0, 3.0, PowerSign::Competing).unwrap(),
            M::saturable(1.3).unwrap(),
        ];
        let eps = 1e-6;
        for m in &models {
            for k in -40..=40i32 {
                let t = 0.25 * k as f64;
                if t.abs() < 2.0 * eps {
                    continue;
                }
                let fd = (m.big_f(t + eps).unwrap() - m.big_f(t - eps).unwrap())
                    / (2.0 * eps);
                let f = m.small_f(t).unwrap();
                assert!(
                    (fd - f).abs() <= 1e-6 * f.abs().max(1.0),
                    "{m:?} at t={t}: fd={fd}, f={f}"
                );
            }
        }
    }

    #[test]
    fn growth_window_default_model() {
        let p = default_params();
        let rep = check_growth(&M::pure_power(2.0).unwrap(), &p);
        assert_relative_eq!(rep.window.0, 1.5);
        assert_relative_eq!(rep.window.1, 3.0);
        assert!(rep.all_hold(), "{rep:?}");
        assert_eq!(rep.f5, Status::Holds);
        assert_eq!(rep.t0, Some(1.0));
    }

    #[test]
    fn growth_below_and_above_window() {
        let p = default_params();
        let rep = check_growth(&M::pure_power(1.2).unwrap(), &p);
        assert_eq!(rep.f3_origin, Status::Fails);
        let rep = check_growth(&M::pure_power(3.5).unwrap(), &p);
        assert_eq!(rep.f3_infinity, Status::Fails);
        // exactly critical
        let rep = check_growth(&M::pure_power(1.5).unwrap(), &p);
        assert_eq!(rep.f2_origin, Status::Critical);
        assert_eq!(rep.f3_origin, Status::Critical);
    }

    #[test]
    fn shipped_models_admissible_at_defaults() {
        let p = default_params();
        for m in [
            M::pure_power(2.0).unwrap(),
            M::double_power(2.0, 2.5, PowerSign::Cooperating).unwrap(),
            M::saturable(1.0).unwrap(),
        ] {
            let rep = check_growth(&m, &p);
            assert!(rep.all_hold(), "{m:?}: {rep:?}");
            assert_eq!(rep.f5, Status::Holds, "{m:?}");
        }
    }

    #[test]
    fn competing_model_t0_in_positive_range() {
        // F = |t|^2/2 - |t|^3/3 > 0 for |t| < 1.5
        let m = M::double_power(2.0, 3.0, PowerSign::Competing).unwrap();
        let t0 = m.probe_t0().unwrap();
        assert!(m.big_f(t0).unwrap() > 0.0);
        assert!(t0 > 0.0 && t0 < 1.5);
    }

    /// Sampled decades corroborate the declared limits when (f3) is declared:
    /// F(t)/|t|^lo -> 0 monotonically as t -> 0 and F(t)/|t|^hi -> 0 as t -> inf.
    #[test]
    fn sampled_limits_corroborate_exponents() {
        let p = default_params();
        for m in [
            M::pure_power(2.0).unwrap(),
            M::double_power(2.0, 2.5, PowerSign::Cooperating).unwrap(),
            M::saturable(1.0).unwrap(),
        ] {
            let rep = check_growth(&m, &p);
            assert!(rep.f3_origin.ok() && rep.f3_infinity.ok());
            let mut prev = f64::INFINITY;
            for k in 1..=6 {
                let t = 10f64.powi(-k);
                let ratio = m.big_f(t).unwrap() / t.powf(rep.window.0);
                assert!(ratio.abs() < prev.abs() + 1e-30, "{m:?} origin decade {k}");
                prev = ratio;
            }
            let mut prev = f64::INFINITY;
            for k in 1..=6 {
                let t = 10f64.powi(k);
                let ratio = m.big_f(t).unwrap() / t.powf(rep.window.1);
                assert!(ratio.abs() < prev.abs(), "{m:?} infinity decade {k}");
                prev = ratio;
            }
        }
    }

    #[test]
    fn overflow_detected() {
        let m = M::pure_power(8.0).unwrap();
        assert!(matches!(
            m.big_f(1e100),
            Err(FchqError::Overflow { .. })
        ));
    }
}
