//! The basic spectral operators: Hilbert transform in x, Laplacian, partial
//! derivatives, Bessel potentials, norms, and the dealiased product.
//!
//! All of them are diagonal Fourier multipliers except the product, which goes
//! through physical space. `sgn(0) = 0` throughout, so the whole `m = 0` row is
//! annihilated by the Hilbert transform.

use num_complex::Complex;

use crate::error::Result;
use crate::field::SpectralField;
use crate::grid::FrequencyIndex;
use crate::scalar::{real, real_from_i64, Real};

/// Hilbert transform with respect to x: multiplier `-i·sgn(m)`, zero on the
/// `m = 0` row.
pub fn hilbert_x<T: Real>(f: &SpectralField<T>) -> SpectralField<T> {
    f.map_multiplier(true, |idx| {
        let s = match idx.m.cmp(&0) {
            std::cmp::Ordering::Greater => -T::one(),
            std::cmp::Ordering::Less => T::one(),
            std::cmp::Ordering::Equal => T::zero(),
        };
        Complex::new(T::zero(), s)
    })
}

/// Laplacian: multiplier `-(m² + n²)`.
pub fn laplacian<T: Real>(f: &SpectralField<T>) -> SpectralField<T> {
    f.map_multiplier(true, |idx| {
        Complex::new(
            -real_from_i64::<T>(idx.m * idx.m + idx.n * idx.n),
            T::zero(),
        )
    })
}

/// `∂_x`: multiplier `i·m`.
pub fn partial_x<T: Real>(f: &SpectralField<T>) -> SpectralField<T> {
    f.map_multiplier(true, |idx| {
        Complex::new(T::zero(), real_from_i64::<T>(idx.m))
    })
}

/// `∂_y`: multiplier `i·n`.
pub fn partial_y<T: Real>(f: &SpectralField<T>) -> SpectralField<T> {
    f.map_multiplier(true, |idx| {
        Complex::new(T::zero(), real_from_i64::<T>(idx.n))
    })
}

/// Bessel potential `J^s`: multiplier `(1 + m² + n²)^{s/2}`. Negative `s` is
/// allowed (used to invert `J^s` in the probes).
pub fn bessel_potential<T: Real>(f: &SpectralField<T>, s: f64) -> SpectralField<T> {
    f.map_multiplier(true, |idx| {
        Complex::new(real::<T>(idx.bessel_base().powf(s / 2.0)), T::zero())
    })
}

/// `H^s` norm: `‖ĝ(m,n)(1+m²+n²)^{s/2}‖_{ℓ²}`. For `s = 0` this is the plain
/// `ℓ²` coefficient norm.
///
/// Panics if `s < 0`; apply `bessel_potential` and take `sobolev_norm(·, 0)`
/// for negative indices.
pub fn sobolev_norm<T: Real>(f: &SpectralField<T>, s: f64) -> T {
    assert!(s >= 0.0, "sobolev_norm requires s >= 0, got {s}");
    let mut acc = T::zero();
    for (idx, c) in f.iter() {
        let w = real::<T>(idx.bessel_base().powf(s));
        acc = acc + c.norm_sqr() * w;
    }
    acc.sqrt()
}

/// Maximum of `|f|` over the oversampled collocation grid.
///
/// This is a lower bound on the true supremum that converges from below as the
/// oversampling factor grows; the grid default of 4 resolves everything except
/// near-Nyquist content. Works for complex fields as well (modulus).
pub fn linf_norm<T: Real>(f: &SpectralField<T>) -> T {
    linf_norm_oversampled(f, f.grid().oversample())
}

/// `linf_norm` with an explicit oversampling factor.
pub fn linf_norm_oversampled<T: Real>(f: &SpectralField<T>, oversample: u32) -> T {
    f.max_modulus_multiplied(oversample, |_| Complex::new(T::one(), T::zero()))
}

/// Pointwise product of two fields on the same grid.
///
/// With `dealias` both inputs and the result are truncated to
/// `|m| < modes_x/3`, `|n| < modes_y/3`, which makes the quadratic product
/// alias-free (2/3 rule). Without it the plain collocation product is
/// returned, aliasing included.
pub fn product<T: Real>(
    f: &SpectralField<T>,
    g: &SpectralField<T>,
    dealias: bool,
) -> Result<SpectralField<T>> {
    f.check_same_grid(g)?;
    let (fa, gb);
    let (f, g) = if dealias {
        fa = truncate_dealias(f);
        gb = truncate_dealias(g);
        (&fa, &gb)
    } else {
        (f, g)
    };
    let pf = f.to_physical_complex(1);
    let pg = g.to_physical_complex(1);
    let prod: Vec<Complex<T>> = pf
        .values
        .iter()
        .zip(&pg.values)
        .map(|(a, b)| a * b)
        .collect();
    let real_out = f.is_real() && g.is_real();
    let out = SpectralField::from_physical_complex(&prod, f.grid(), real_out);
    Ok(if dealias { truncate_dealias(&out) } else { out })
}

/// Exact (alias-free, untruncated) product: both fields are embedded into a
/// grid with doubled mode counts, where the quadratic convolution fits without
/// wrap-around. The result lives on the doubled grid.
pub fn product_exact<T: Real>(
    f: &SpectralField<T>,
    g: &SpectralField<T>,
) -> Result<SpectralField<T>> {
    f.check_same_grid(g)?;
    let grid = f.grid();
    let big =
        crate::grid::GridSpec::new(grid.modes_x() * 2, grid.modes_y() * 2, grid.oversample())?;
    let fb = f.on_grid(big);
    let gb = g.on_grid(big);
    product(&fb, &gb, false)
}

/// Zeroes every mode with `3|m| >= modes_x` or `3|n| >= modes_y`.
pub fn truncate_dealias<T: Real>(f: &SpectralField<T>) -> SpectralField<T> {
    let mx = i64::from(f.grid().modes_x());
    let my = i64::from(f.grid().modes_y());
    f.map_multiplier(true, |idx| {
        if 3 * idx.m.abs() < mx && 3 * idx.n.abs() < my {
            Complex::new(T::one(), T::zero())
        } else {
            Complex::new(T::zero(), T::zero())
        }
    })
}

/// True iff the whole `m = 0` row vanishes (relative to the field's `ℓ²`
/// size), i.e. `∫ f(x,y) dx = 0` for a.e. y.
pub fn x_mean_zero<T: Real>(f: &SpectralField<T>) -> bool {
    let scale = f.l2_norm().max(T::zero());
    let tol = real::<T>(1e-14) * if scale > T::zero() { scale } else { T::one() };
    let hy = f.grid().half_y();
    (-hy..hy).all(|n| f.coeff(FrequencyIndex::new(0, n)).norm() <= tol)
}

/// Largest `|ĝ(0,n)|` over the `m = 0` row.
pub fn x_mean_residual<T: Real>(f: &SpectralField<T>) -> T {
    let hy = f.grid().half_y();
    (-hy..hy).fold(T::zero(), |acc, n| {
        acc.max(f.coeff(FrequencyIndex::new(0, n)).norm())
    })
}
