//! Pseudospectral ground-state solver and verification workbench for the
//! doubly nonlocal fractional Choquard equation
//!
//!   (-Delta)^s u + mu u = (I_alpha * F(u)) f(u)   on R^N,
//!
//! discretized on a periodically extended truncated box. The crate computes
//! candidate ground states by Pohozaev-projected descent and by a stabilized
//! resolvent fixed-point iteration, then certifies them a posteriori:
//! Pohozaev residual, positivity, radial symmetry, boundedness, Riesz-term
//! vanishing, and the polynomial decay exponent -(N+2s). A property-test
//! battery covers the scalar and functional inequalities the variational
//! structure rests on.
//!
//! Everything is generic over the grid scalar (f32/f64); the `*64` aliases
//! below are the production instantiation.

pub mod error;
mod fft;
pub mod functionals;
pub mod grid;
pub mod lattice;
pub mod spectral;
pub mod nonlinearity;
pub mod quad;
pub mod randfield;
pub mod scalar;

pub use error::{FchqError, Result};
pub use scalar::{cast, Scalar};
