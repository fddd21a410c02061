//! The variational core: D(u), the energy J_mu, the Pohozaev functional
//! P_mu, the L^2 gradient, the dilation u(./t), and the projection time t*
//! onto the Pohozaev set.
//!
//! Dilations enter twice, deliberately:
//! - the exact carrier `Field::rescaled_box`, under which (kinetic, mass, D)
//!   obey the scaling laws to machine precision (used by the projection and
//!   every path evaluation), and
//! - `dilate`, band-limited trigonometric interpolation on the same grid,
//!   kept as an independent cross-check.

use crate::error::{FchqError, Result};
use crate::fft::{to_complex, transform_nd, PlanPair};
use crate::grid::{inner, l2_norm, Field};
use crate::nonlinearity::NonlinearityModel;
use crate::scalar::{cast, Scalar};
use crate::spectral::{frac_laplacian, gagliardo_seminorm_sq, riesz_potential, FracOrder,
    FracParams, RieszPlan};
use num_complex::Complex;
use serde::Serialize;

/// Allowed dilation factors for the interpolating `dilate`.
pub const DILATE_RANGE: (f64, f64) = (0.25, 4.0);

/// The three scaling scalars of a field: everything J_mu and P_mu need.
#[derive(Debug, Clone, Copy)]
pub struct Scalars<T: Scalar> {
    pub kinetic: T,
    pub mass: T,
    pub dterm: T,
}

impl<T: Scalar> Scalars<T> {
    /// J_mu = kinetic/2 + mu mass/2 - D/2.
    pub fn energy(&self, p: &FracParams<T>) -> T {
        let half = cast::<T>(0.5);
        half * self.kinetic + half * p.mu * self.mass - half * self.dterm
    }

    /// P_mu = (N-2s)/2 kinetic + N mu/2 mass - (N+alpha)/2 D.
    pub fn pohozaev(&self, p: &FracParams<T>) -> T {
        let n = cast::<T>(p.dim as f64);
        let half = cast::<T>(0.5);
        half * (n - cast::<T>(2.0) * p.s) * self.kinetic + half * n * p.mu * self.mass
            - half * (n + p.alpha) * self.dterm
    }

    /// Exact scaling laws under u -> u(./t):
    /// (kinetic, mass, dterm) -> (t^(N-2s), t^N, t^(N+alpha)) * (...).
    pub fn dilated(&self, p: &FracParams<T>, t: T) -> Self {
        let n = cast::<T>(p.dim as f64);
        Self {
            kinetic: t.powf(n - cast::<T>(2.0) * p.s) * self.kinetic,
            mass: t.powf(n) * self.mass,
            dterm: t.powf(n + p.alpha) * self.dterm,
        }
    }

    /// Positive scale of the Pohozaev normalization, (N-2s)/2 A + N mu/2 B.
    pub fn pohozaev_scale(&self, p: &FracParams<T>) -> T {
        let n = cast::<T>(p.dim as f64);
        let half = cast::<T>(0.5);
        half * (n - cast::<T>(2.0) * p.s) * self.kinetic + half * n * p.mu * self.mass
    }
}

/// D(u) = integral (I_alpha * F(u)) F(u), with a caller-provided plan.
pub fn dterm_with<T: Scalar>(
    plan: &RieszPlan<T>,
    u: &Field<T>,
    m: &NonlinearityModel<T>,
) -> Result<T> {
    let fu = m.big_f_field(u)?;
    Ok(inner(&plan.apply(&fu)?, &fu))
}

pub fn dterm<T: Scalar>(
    u: &Field<T>,
    m: &NonlinearityModel<T>,
    p: &FracParams<T>,
) -> Result<T> {
    dterm_with(&RieszPlan::new(u.grid(), p)?, u, m)
}

pub fn scalars_with<T: Scalar>(
    plan: &RieszPlan<T>,
    u: &Field<T>,
    m: &NonlinearityModel<T>,
    p: &FracParams<T>,
) -> Result<Scalars<T>> {
    Ok(Scalars {
        kinetic: gagliardo_seminorm_sq(u, p)?,
        mass: inner(u, u),
        dterm: dterm_with(plan, u, m)?,
    })
}

pub fn scalars<T: Scalar>(
    u: &Field<T>,
    m: &NonlinearityModel<T>,
    p: &FracParams<T>,
) -> Result<Scalars<T>> {
    scalars_with(&RieszPlan::new(u.grid(), p)?, u, m, p)
}

pub fn energy<T: Scalar>(
    u: &Field<T>,
    m: &NonlinearityModel<T>,
    p: &FracParams<T>,
) -> Result<T> {
    Ok(scalars(u, m, p)?.energy(p))
}

pub fn pohozaev<T: Scalar>(
    u: &Field<T>,
    m: &NonlinearityModel<T>,
    p: &FracParams<T>,
) -> Result<T> {
    Ok(scalars(u, m, p)?.pohozaev(p))
}

/// The L^2 gradient of J_mu: (-Delta)^s u + mu u - (I_alpha*F(u)) f(u).
pub fn gradient_with<T: Scalar>(
    plan: &RieszPlan<T>,
    u: &Field<T>,
    m: &NonlinearityModel<T>,
    p: &FracParams<T>,
) -> Result<Field<T>> {
    let lin = frac_laplacian(u, p, FracOrder::Full)?.lin_comb(T::one(), u, p.mu);
    let pot = plan.apply(&m.big_f_field(u)?)?;
    let fu = m.small_f_field(u)?;
    let vals: Vec<T> = lin
        .values()
        .iter()
        .zip(pot.values().iter().zip(fu.values()))
        .map(|(&l, (&a, &b))| l - a * b)
        .collect();
    Field::from_values(*u.grid(), vals)
}

pub fn gradient<T: Scalar>(
    u: &Field<T>,
    m: &NonlinearityModel<T>,
    p: &FracParams<T>,
) -> Result<Field<T>> {
    gradient_with(&RieszPlan::new(u.grid(), p)?, u, m, p)
}

/// Scalar energy/identity summary of a field (all six entries recomputed).
#[derive(Debug, Clone, Serialize)]
pub struct EnergyReport {
    pub kinetic: f64,
    pub mass: f64,
    pub dterm: f64,
    pub energy: f64,
    pub pohozaev: f64,
    pub grad_norm: f64,
}

pub fn energy_report<T: Scalar>(
    u: &Field<T>,
    m: &NonlinearityModel<T>,
    p: &FracParams<T>,
) -> Result<EnergyReport> {
    let plan = RieszPlan::new(u.grid(), p)?;
    let sc = scalars_with(&plan, u, m, p)?;
    let grad = gradient_with(&plan, u, m, p)?;
    Ok(EnergyReport {
        kinetic: sc.kinetic.to_double(),
        mass: sc.mass.to_double(),
        dterm: sc.dterm.to_double(),
        energy: sc.energy(p).to_double(),
        pohozaev: sc.pohozaev(p).to_double(),
        grad_norm: l2_norm(&grad).to_double(),
    })
}

/// u(x/t) by band-limited trigonometric interpolation on the same grid.
/// t < 1 requires the spectrum to fit below t * Nyquist (else SpectralLeak);
/// t > 1 must keep the widened field decayed at the boundary.
pub fn dilate<T: Scalar>(u: &Field<T>, t: T) -> Result<Field<T>> {
    let tf = t.to_double();
    if !(DILATE_RANGE.0..=DILATE_RANGE.1).contains(&tf) {
        return Err(FchqError::DilationRange {
            t: tf,
            lo: DILATE_RANGE.0,
            hi: DILATE_RANGE.1,
        });
    }
    let g = *u.grid();
    let n = g.points_per_axis();
    let dim = g.dim();
    let plans = PlanPair::new(n);

    // band-limit precondition on the full spectrum
    {
        let mut buf = to_complex(u.values());
        transform_nd(&mut buf, dim, n, &plans.forward);
        let cutoff = if tf < 1.0 {
            (tf * n as f64 / 2.0).floor() as i64
        } else {
            (0.75 * n as f64 / 2.0).floor() as i64
        };
        let mut max_all = 0.0f64;
        let mut max_tail = 0.0f64;
        let mut idx = [0usize; 3];
        for (flat, c) in buf.iter().enumerate() {
            g.unravel(flat, &mut idx);
            let tail = (0..dim).any(|d| {
                let k = idx[d] as i64;
                let signed = if k < n as i64 / 2 { k } else { k - n as i64 };
                signed.abs() >= cutoff
            });
            let mag = (c.re * c.re + c.im * c.im).to_double().sqrt();
            max_all = max_all.max(mag);
            if tail {
                max_tail = max_tail.max(mag);
            }
        }
        if max_all > 0.0 && max_tail > 1e-8 * max_all {
            return Err(FchqError::SpectralLeak {
                ratio: max_tail / max_all,
            });
        }
    }

    // evaluation matrices for one axis (shared by all axes; box is cubic):
    // value(x_j) = (1/n) sum_k c_k exp(i xi_k (x_j/t + L)), Nyquist as cosine
    let axes = crate::grid::wavenumbers(&g);
    let l = g.half_length();
    let inv_n = T::one() / cast::<T>(n as f64);
    let mut cos_m = vec![T::zero(); n * n];
    let mut sin_m = vec![T::zero(); n * n];
    for j in 0..n {
        let y = g.coord(j) / t;
        // evaluation points outside the box read the zero extension of the
        // field on R^N, not the periodic image
        if y < -l || y >= l {
            continue;
        }
        let arg_base = y + l;
        for k in 0..n {
            let xi = axes[0][k];
            let phase = xi * arg_base;
            if k == n / 2 {
                cos_m[j * n + k] = (xi.abs() * arg_base).cos() * inv_n;
                // symmetric real multiplier at Nyquist: no sine part
            } else {
                cos_m[j * n + k] = phase.cos() * inv_n;
                sin_m[j * n + k] = phase.sin() * inv_n;
            }
        }
    }

    let total = g.len();
    let mut values = u.values().to_vec();
    let mut line = vec![Complex::new(T::zero(), T::zero()); n];
    let mut scratch =
        vec![Complex::new(T::zero(), T::zero()); plans.forward.get_inplace_scratch_len()];
    for axis in 0..dim {
        let stride = n.pow((dim - 1 - axis) as u32);
        let block = stride * n;
        for outer in (0..total).step_by(block) {
            for inner_off in 0..stride {
                let base = outer + inner_off;
                for (k, v) in line.iter_mut().enumerate() {
                    *v = Complex::new(values[base + k * stride], T::zero());
                }
                plans.forward.process_with_scratch(&mut line, &mut scratch);
                for j in 0..n {
                    let row = j * n;
                    let mut acc = T::zero();
                    for (k, c) in line.iter().enumerate() {
                        acc = acc + cos_m[row + k] * c.re - sin_m[row + k] * c.im;
                    }
                    values[base + j * stride] = acc;
                }
            }
        }
    }
    let out = Field::from_values(g, values)?;
    if tf > 1.0 {
        let ratio = out.boundary_ratio().to_double();
        if ratio > 1e-6 {
            return Err(FchqError::BoundaryContamination { ratio });
        }
    }
    Ok(out)
}

/// The unique positive root t* of P_mu(u(./t)) = 0, through the exact
/// scaling laws on (kinetic, mass, dterm):
/// g(t) = (N-2s)/2 A + (N/2) mu B t^(2s) - (N+alpha)/2 D t^(2s+alpha).
pub fn pohozaev_time_from<T: Scalar>(sc: &Scalars<T>, p: &FracParams<T>) -> Result<T> {
    if !(sc.dterm > T::zero()) {
        return Err(FchqError::NoPohozaevTime {
            dterm: sc.dterm.to_double(),
        });
    }
    let n = cast::<T>(p.dim as f64);
    let half = cast::<T>(0.5);
    let two_s = cast::<T>(2.0) * p.s;
    let c1 = half * (n - two_s) * sc.kinetic;
    let c2 = half * n * p.mu * sc.mass;
    let c3 = half * (n + p.alpha) * sc.dterm;
    let g = |t: T| c1 + c2 * t.powf(two_s) - c3 * t.powf(two_s + p.alpha);
    // g(0+) >= 0, single hump, unique root beyond the maximum
    let mut hi = T::one();
    let mut steps = 0;
    while g(hi) > T::zero() {
        hi = hi * cast(2.0);
        steps += 1;
        if steps > 200 {
            return Err(FchqError::DomainError("pohozaev time bracket failed".into()));
        }
    }
    let mut lo = T::zero();
    for _ in 0..200 {
        let mid = half * (lo + hi);
        if g(mid) > T::zero() {
            lo = mid;
        } else {
            hi = mid;
        }
        if (hi - lo) <= cast::<T>(1e-15) * hi {
            break;
        }
    }
    Ok(half * (lo + hi))
}

pub fn pohozaev_time<T: Scalar>(
    u: &Field<T>,
    m: &NonlinearityModel<T>,
    p: &FracParams<T>,
) -> Result<T> {
    pohozaev_time_from(&scalars(u, m, p)?, p)
}

/// Center of mass of u^2 (alignment reference for cross-solver comparison).
pub fn center_of_mass<T: Scalar>(u: &Field<T>) -> Vec<T> {
    let g = u.grid();
    let mut num = vec![T::zero(); g.dim()];
    let mut den = T::zero();
    let mut x = [T::zero(); 3];
    for (flat, &v) in u.values().iter().enumerate() {
        let w = v * v;
        den = den + w;
        g.position(flat, &mut x);
        for d in 0..g.dim() {
            num[d] = num[d] + w * x[d];
        }
    }
    if den == T::zero() {
        return vec![T::zero(); g.dim()];
    }
    num.into_iter().map(|s| s / den).collect()
}

/// v(x) = u(x + delta) by spectral phase shift (exact for band-limited u).
pub fn shift<T: Scalar>(u: &Field<T>, delta: &[T]) -> Result<Field<T>> {
    let g = *u.grid();
    let n = g.points_per_axis();
    let dim = g.dim();
    assert_eq!(delta.len(), dim);
    let plans = PlanPair::new(n);
    let mut buf = to_complex(u.values());
    transform_nd(&mut buf, dim, n, &plans.forward);
    let axes = crate::grid::wavenumbers(&g);
    let mut idx = [0usize; 3];
    for (flat, c) in buf.iter_mut().enumerate() {
        g.unravel(flat, &mut idx);
        let mut phase = T::zero();
        for d in 0..dim {
            phase = phase + axes[d][idx[d]] * delta[d];
        }
        let rot = Complex::new(phase.cos(), phase.sin());
        *c = *c * rot;
    }
    transform_nd(&mut buf, dim, n, &plans.inverse);
    let scale = T::one() / cast(g.len() as f64);
    Field::from_values(g, crate::fft::real_part_checked(&buf, scale)?)
}

/// Shift so the center of mass sits at the origin.
pub fn center<T: Scalar>(u: &Field<T>) -> Result<Field<T>> {
    let com = center_of_mass(u);
    shift(u, &com)
}
