//! Spectral toolbox for the Shrira equation `u_t + H Δu + u u_x = 0` on the
//! two-dimensional torus.
//!
//! Everything lives in Fourier space: a [`SpectralField`] is a truncated array
//! of Fourier coefficients over `Z²`, and all operators (Hilbert transform in
//! x, Laplacian, Bessel potentials, dyadic frequency projections, the free
//! dispersive group) are diagonal multipliers on it. Physical-space values are
//! only produced on demand, through zero-padded inverse FFTs, for `L^∞`
//! evaluation and for the dealiased pseudospectral product.
//!
//! The Fourier convention is
//! `f(x,y) = Σ ĝ(m,n) e^{i(mx+ny)}` with
//! `ĝ(m,n) = (2π)^{-2} ∫∫ f e^{-i(mx+ny)} dx dy`,
//! so the `H^s` norm is literally the weighted `ℓ²` norm of the coefficients.
//!
//! The crate is generic over the scalar type (`f32` or `f64`) through the
//! [`Real`] trait; the `f64` aliases at the crate root are what most users
//! want.

pub mod bump;
pub mod dyadic;
pub mod error;
pub mod field;
pub mod grid;
pub mod io;
pub mod ops;
pub mod propagator;
pub mod quadrature;
pub mod scalar;
pub mod solver;

pub use error::CoreError;
pub use field::SpectralField;
pub use grid::{FrequencyIndex, GridSpec};
pub use scalar::Real;

/// `f64` spectral field, the default working type.
pub type Field64 = SpectralField<f64>;
/// `f32` spectral field, for storage- or bandwidth-constrained sweeps.
pub type Field32 = SpectralField<f32>;
