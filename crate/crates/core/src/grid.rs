//! Uniform tensor grids on truncated boxes, quadrature, frequency lattices,
//! and the binary field snapshot format.

use crate::error::{FchqError, Result};
use crate::scalar::{cast, pairwise_sum, Scalar};
use std::io::{Read, Write};
use std::path::Path;

/// Fraction of max magnitude below which a field counts as decayed in the
/// outer 10% shell of the box.
pub const BOUNDARY_DECAY_TOL: f64 = 1e-8;

/// The discretized truncated box [-L, L]^N with n points per axis,
/// x_j = -L + j h, h = 2L/n (periodic extension convention).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec<T: Scalar> {
    dim: usize,
    n: usize,
    half_length: T,
}

impl<T: Scalar> GridSpec<T> {
    pub fn new(dim: usize, half_length: T, points_per_axis: usize) -> Result<Self> {
        if !(1..=3).contains(&dim) {
            return Err(FchqError::InvalidGrid(format!("dim {dim} not in 1..=3")));
        }
        if !(half_length > T::zero()) || !half_length.is_finite() {
            return Err(FchqError::InvalidGrid(format!(
                "half_length {half_length} must be positive"
            )));
        }
        if points_per_axis < 8 || points_per_axis % 2 != 0 {
            return Err(FchqError::InvalidGrid(format!(
                "points_per_axis {points_per_axis} must be even and >= 8"
            )));
        }
        if points_per_axis.checked_pow(dim as u32).is_none() {
            return Err(FchqError::InvalidGrid("n^N overflows".into()));
        }
        Ok(Self {
            dim,
            n: points_per_axis,
            half_length,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn points_per_axis(&self) -> usize {
        self.n
    }
    pub fn half_length(&self) -> T {
        self.half_length
    }
    pub fn spacing(&self) -> T {
        (self.half_length + self.half_length) / cast(self.n as f64)
    }
    /// Total number of grid points n^N.
    pub fn len(&self) -> usize {
        self.n.pow(self.dim as u32)
    }
    pub fn is_empty(&self) -> bool {
        false
    }
    /// Quadrature weight h^N of one cell.
    pub fn cell_volume(&self) -> T {
        let mut v = T::one();
        for _ in 0..self.dim {
            v = v * self.spacing();
        }
        v
    }

    /// Same lattice, box rescaled by t (the exact dilation carrier).
    pub fn rescaled(&self, t: T) -> Self {
        Self {
            dim: self.dim,
            n: self.n,
            half_length: self.half_length * t,
        }
    }

    /// Coordinate along one axis, index 0..n.
    #[inline]
    pub fn coord(&self, idx: usize) -> T {
        cast::<T>(idx as f64) * self.spacing() - self.half_length
    }

    /// Decompose a flat row-major index into per-axis indices.
    #[inline]
    pub fn unravel(&self, flat: usize, out: &mut [usize; 3]) {
        let mut rem = flat;
        for d in (0..self.dim).rev() {
            out[d] = rem % self.n;
            rem /= self.n;
        }
    }

    /// Position vector of a flat index.
    #[inline]
    pub fn position(&self, flat: usize, out: &mut [T; 3]) {
        let mut idx = [0usize; 3];
        self.unravel(flat, &mut idx);
        for d in 0..self.dim {
            out[d] = self.coord(idx[d]);
        }
    }

    /// Euclidean radius |x| of a flat index.
    pub fn radius(&self, flat: usize) -> T {
        let mut x = [T::zero(); 3];
        self.position(flat, &mut x);
        let mut q = T::zero();
        for d in 0..self.dim {
            q = q + x[d] * x[d];
        }
        q.sqrt()
    }
}

/// Frequency lattice xi_k = pi k / L per axis, k in {-n/2, ..., n/2 - 1},
/// returned in FFT storage order (k = 0, 1, ..., n/2-1, -n/2, ..., -1).
pub fn wavenumbers<T: Scalar>(grid: &GridSpec<T>) -> Vec<Vec<T>> {
    let n = grid.points_per_axis() as i64;
    let base = T::PI() / grid.half_length();
    (0..grid.dim())
        .map(|_| {
            (0..n)
                .map(|k| {
                    let signed = if k < n / 2 { k } else { k - n };
                    base * cast(signed as f64)
                })
                .collect()
        })
        .collect()
}

/// A real scalar function sampled on a grid. Values are row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Field<T: Scalar> {
    grid: GridSpec<T>,
    values: Vec<T>,
}

impl<T: Scalar> Field<T> {
    pub fn zeros(grid: GridSpec<T>) -> Self {
        Self {
            values: vec![T::zero(); grid.len()],
            grid,
        }
    }

    pub fn from_values(grid: GridSpec<T>, values: Vec<T>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(FchqError::InvalidGrid(format!(
                "value count {} != n^N = {}",
                values.len(),
                grid.len()
            )));
        }
        let f = Self { grid, values };
        f.check_finite()?;
        Ok(f)
    }

    /// Sample a function of position.
    pub fn from_fn(grid: GridSpec<T>, f: impl Fn(&[T]) -> T) -> Self {
        let mut values = Vec::with_capacity(grid.len());
        let mut x = [T::zero(); 3];
        for i in 0..grid.len() {
            grid.position(i, &mut x);
            values.push(f(&x[..grid.dim()]));
        }
        Self { grid, values }
    }

    pub fn grid(&self) -> &GridSpec<T> {
        &self.grid
    }
    pub fn values(&self) -> &[T] {
        &self.values
    }
    pub fn values_mut(&mut self) -> &mut [T] {
        &mut self.values
    }

    pub fn check_finite(&self) -> Result<()> {
        for (i, v) in self.values.iter().enumerate() {
            if !v.is_finite() {
                return Err(FchqError::NonFinite(format!("index {i}: {v}")));
            }
        }
        Ok(())
    }

    /// Carry the values onto a box rescaled by t: this is the exact sampling
    /// of u(./t) on the dilated grid.
    pub fn rescaled_box(&self, t: T) -> Self {
        Self {
            grid: self.grid.rescaled(t),
            values: self.values.clone(),
        }
    }

    pub fn map(&self, f: impl Fn(T) -> T) -> Self {
        Self {
            grid: self.grid,
            values: self.values.iter().map(|&v| f(v)).collect(),
        }
    }

    pub fn scaled(&self, a: T) -> Self {
        self.map(|v| a * v)
    }

    /// a*self + b*other (grids must match).
    pub fn lin_comb(&self, a: T, other: &Self, b: T) -> Self {
        assert_eq!(self.grid, other.grid, "grid mismatch");
        Self {
            grid: self.grid,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(&x, &y)| a * x + b * y)
                .collect(),
        }
    }

    pub fn max_abs(&self) -> T {
        self.values
            .iter()
            .fold(T::zero(), |m, &v| m.max(v.abs()))
    }

    /// Max |u| over the outer 10% shell (per-axis max-norm) relative to the
    /// global max; the boundary-decay diagnostic behind BoundaryContamination.
    pub fn boundary_ratio(&self) -> T {
        let max = self.max_abs();
        if max == T::zero() {
            return T::zero();
        }
        let cut = cast::<T>(0.9) * self.grid.half_length();
        let mut worst = T::zero();
        let mut x = [T::zero(); 3];
        for i in 0..self.grid.len() {
            self.grid.position(i, &mut x);
            let linf = (0..self.grid.dim()).fold(T::zero(), |m, d| m.max(x[d].abs()));
            if linf >= cut {
                worst = worst.max(self.values[i].abs());
            }
        }
        worst / max
    }
}

/// h^N * sum of values: the trapezoid rule under periodic extension,
/// spectrally accurate for fields decayed at the boundary.
pub fn integrate<T: Scalar>(f: &Field<T>) -> T {
    f.grid().cell_volume() * pairwise_sum(f.values())
}

/// integrate(f * g).
pub fn inner<T: Scalar>(f: &Field<T>, g: &Field<T>) -> T {
    assert_eq!(f.grid(), g.grid(), "grid mismatch");
    let prod: Vec<T> = f
        .values()
        .iter()
        .zip(g.values())
        .map(|(&a, &b)| a * b)
        .collect();
    f.grid().cell_volume() * pairwise_sum(&prod)
}

/// L^p norm (integrate |f|^p)^(1/p).
pub fn lp_norm<T: Scalar>(f: &Field<T>, p: T) -> T {
    let pow: Vec<T> = f.values().iter().map(|&v| v.abs().powf(p)).collect();
    (f.grid().cell_volume() * pairwise_sum(&pow)).powf(T::one() / p)
}

/// L^2 norm.
pub fn l2_norm<T: Scalar>(f: &Field<T>) -> T {
    inner(f, f).sqrt()
}

const SNAPSHOT_MAGIC: &[u8; 5] = b"FCHQ1";

/// Write the binary snapshot: magic "FCHQ1", dim u8, n u32 LE, L f64 LE,
/// then n^N little-endian f64 values row-major.
pub fn save_snapshot<T: Scalar>(field: &Field<T>, path: &Path) -> Result<()> {
    let g = field.grid();
    let mut w = std::io::BufWriter::new(
        std::fs::File::create(path).map_err(|e| FchqError::Snapshot(e.to_string()))?,
    );
    let mut put = |buf: &[u8]| -> Result<()> {
        w.write_all(buf).map_err(|e| FchqError::Snapshot(e.to_string()))
    };
    put(SNAPSHOT_MAGIC)?;
    put(&[g.dim() as u8])?;
    put(&(g.points_per_axis() as u32).to_le_bytes())?;
    put(&g.half_length().to_double().to_le_bytes())?;
    for v in field.values() {
        put(&v.to_double().to_le_bytes())?;
    }
    Ok(())
}

pub fn load_snapshot<T: Scalar>(path: &Path) -> Result<Field<T>> {
    let mut r = std::io::BufReader::new(
        std::fs::File::open(path).map_err(|e| FchqError::Snapshot(e.to_string()))?,
    );
    let mut header = [0u8; 5 + 1 + 4 + 8];
    r.read_exact(&mut header)
        .map_err(|e| FchqError::Snapshot(format!("short header: {e}")))?;
    if &header[..5] != SNAPSHOT_MAGIC {
        return Err(FchqError::Snapshot("bad magic".into()));
    }
    let dim = header[5] as usize;
    let n = u32::from_le_bytes(header[6..10].try_into().unwrap()) as usize;
    let l = f64::from_le_bytes(header[10..18].try_into().unwrap());
    let grid = GridSpec::<T>::new(dim, cast(l), n)?;
    let mut values = Vec::with_capacity(grid.len());
    let mut buf = [0u8; 8];
    for i in 0..grid.len() {
        r.read_exact(&mut buf)
            .map_err(|_| FchqError::Snapshot(format!("truncated at value {i}")))?;
        values.push(cast::<T>(f64::from_le_bytes(buf)));
    }
    if r.read(&mut buf).map_err(|e| FchqError::Snapshot(e.to_string()))? != 0 {
        return Err(FchqError::Snapshot("trailing bytes".into()));
    }
    Field::from_values(grid, values)
}
