//! Truncated Fourier representation of functions on the torus.

use num_complex::Complex;
use rustfft::FftPlanner;

use crate::error::{CoreError, Result};
use crate::grid::{FrequencyIndex, GridSpec};
use crate::scalar::{real, Real};

/// A function on `T²` stored as its Fourier coefficients `ĝ(m,n)` over the
/// retained band of the grid.
///
/// Fields are immutable after construction: every operation returns a new
/// field, so values can be shared freely across threads.
///
/// For real fields (`real_flag`) the coefficients satisfy
/// `ĝ(-m,-n) = conj(ĝ(m,n))` and the Nyquist rows (`m = -modes_x/2`,
/// `n = -modes_y/2`) are identically zero, so every multiplier operator
/// produces an exactly Hermitian output.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralField<T: Real> {
    grid: GridSpec,
    coeffs: Vec<Complex<T>>,
    real_flag: bool,
}

/// Physical-space samples on the collocation grid, x-major:
/// `values[j * ny + k] = f(x_j, y_k)` with `x_j = 2πj/nx`.
#[derive(Debug, Clone)]
pub struct PhysicalGrid<T> {
    pub values: Vec<T>,
    pub nx: usize,
    pub ny: usize,
}

impl<T: Real> SpectralField<T> {
    /// The zero field.
    pub fn zero(grid: GridSpec, real_flag: bool) -> Self {
        Self {
            grid,
            coeffs: vec![Complex::new(T::zero(), T::zero()); grid.len()],
            real_flag,
        }
    }

    /// Builds a field from an explicit coefficient list; all other modes are
    /// zero.
    ///
    /// With `real_flag`, Hermitian partners may be omitted (they are filled in
    /// by conjugation); if both members of a pair are supplied they must agree
    /// up to conjugation, and the `(0,0)` coefficient must be real.
    pub fn synthesize(
        coeff_list: &[(FrequencyIndex, Complex<T>)],
        grid: GridSpec,
        real_flag: bool,
    ) -> Result<Self> {
        let mut field = Self::zero(grid, real_flag);
        let mut given = vec![false; grid.len()];
        for &(idx, value) in coeff_list {
            if !grid.contains(idx) {
                return Err(CoreError::IndexOutOfRange {
                    m: idx.m,
                    n: idx.n,
                    half_x: grid.half_x(),
                    half_y: grid.half_y(),
                });
            }
            let off = grid.offset(idx);
            if given[off] && field.coeffs[off] != value {
                return Err(CoreError::HermitianViolation { m: idx.m, n: idx.n });
            }
            field.coeffs[off] = value;
            given[off] = true;
        }
        if real_flag {
            field.complete_hermitian(&given)?;
            field.zero_nyquist();
        }
        Ok(field)
    }

    fn complete_hermitian(&mut self, given: &[bool]) -> Result<()> {
        let tol = real::<T>(1e-12);
        for idx in self.grid.indices() {
            let off = self.grid.offset(idx);
            if !given[off] {
                continue;
            }
            let partner = idx.conjugate_partner();
            if !self.grid.contains(partner) {
                // Nyquist mode without a representable partner; zeroed below.
                continue;
            }
            let poff = self.grid.offset(partner);
            let want = self.coeffs[off].conj();
            if given[poff] {
                let have = self.coeffs[poff];
                let scale = T::one().max(want.norm());
                if (have - want).norm() > tol * scale {
                    return Err(CoreError::HermitianViolation {
                        m: partner.m,
                        n: partner.n,
                    });
                }
            } else {
                self.coeffs[poff] = want;
            }
        }
        Ok(())
    }

    /// Zeroes the asymmetric Nyquist rows so the representable band is exactly
    /// closed under `(m,n) -> (-m,-n)`.
    fn zero_nyquist(&mut self) {
        let (hx, hy) = (self.grid.half_x(), self.grid.half_y());
        for n in -hy..hy {
            let off = self.grid.offset(FrequencyIndex::new(-hx, n));
            self.coeffs[off] = Complex::new(T::zero(), T::zero());
        }
        for m in -hx..hx {
            let off = self.grid.offset(FrequencyIndex::new(m, -hy));
            self.coeffs[off] = Complex::new(T::zero(), T::zero());
        }
    }

    /// Builds a field directly from raw coefficient storage (m-major order);
    /// used by the SPF2 reader, which loads files verbatim.
    pub(crate) fn from_raw(grid: GridSpec, coeffs: Vec<Complex<T>>, real_flag: bool) -> Self {
        assert_eq!(coeffs.len(), grid.len(), "raw storage must match the grid");
        Self {
            grid,
            coeffs,
            real_flag,
        }
    }

    pub fn grid(&self) -> GridSpec {
        self.grid
    }

    pub fn is_real(&self) -> bool {
        self.real_flag
    }

    /// Coefficient at `(m,n)`; zero outside the retained band.
    pub fn coeff(&self, idx: FrequencyIndex) -> Complex<T> {
        if self.grid.contains(idx) {
            self.coeffs[self.grid.offset(idx)]
        } else {
            Complex::new(T::zero(), T::zero())
        }
    }

    pub fn coeffs(&self) -> &[Complex<T>] {
        &self.coeffs
    }

    /// Iterates `(index, coefficient)` pairs in storage order.
    pub fn iter(&self) -> impl Iterator<Item = (FrequencyIndex, Complex<T>)> + '_ {
        self.grid
            .indices()
            .map(move |idx| (idx, self.coeffs[self.grid.offset(idx)]))
    }

    /// Applies a diagonal Fourier multiplier `ĝ(m,n) -> w(m,n)·ĝ(m,n)`.
    ///
    /// `preserves_reality` states whether `w(-m,-n) = conj(w(m,n))`; when true
    /// the real flag carries over to the output.
    pub fn map_multiplier(
        &self,
        preserves_reality: bool,
        mut weight: impl FnMut(FrequencyIndex) -> Complex<T>,
    ) -> Self {
        let mut out = self.clone();
        for idx in self.grid.indices() {
            let off = self.grid.offset(idx);
            out.coeffs[off] = self.coeffs[off] * weight(idx);
        }
        out.real_flag = self.real_flag && preserves_reality;
        out
    }

    /// True when every coefficient is finite.
    pub fn is_finite(&self) -> bool {
        self.coeffs
            .iter()
            .all(|c| c.re.is_finite() && c.im.is_finite())
    }

    /// `ℓ²` norm of the coefficients (the `L²` norm up to the fixed `(2π)`
    /// normalization).
    pub fn l2_norm(&self) -> T {
        self.coeffs
            .iter()
            .map(|c| c.norm_sqr())
            .fold(T::zero(), |acc, x| acc + x)
            .sqrt()
    }

    /// `L²` pairing `Σ ĝ_f(m,n) conj(ĝ_g(m,n))`.
    pub fn inner(&self, other: &Self) -> Result<Complex<T>> {
        self.check_same_grid(other)?;
        Ok(self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a * b.conj())
            .fold(Complex::new(T::zero(), T::zero()), |acc, x| acc + x))
    }

    pub fn check_same_grid(&self, other: &Self) -> Result<()> {
        if self.grid.modes_x() != other.grid.modes_x()
            || self.grid.modes_y() != other.grid.modes_y()
        {
            return Err(CoreError::GridMismatch {
                left_x: self.grid.modes_x(),
                left_y: self.grid.modes_y(),
                right_x: other.grid.modes_x(),
                right_y: other.grid.modes_y(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_grid(other)?;
        let mut out = self.clone();
        for (c, o) in out.coeffs.iter_mut().zip(&other.coeffs) {
            *c = *c + *o;
        }
        out.real_flag = self.real_flag && other.real_flag;
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_grid(other)?;
        let mut out = self.clone();
        for (c, o) in out.coeffs.iter_mut().zip(&other.coeffs) {
            *c = *c - *o;
        }
        out.real_flag = self.real_flag && other.real_flag;
        Ok(out)
    }

    pub fn scaled(&self, factor: T) -> Self {
        let mut out = self.clone();
        for c in out.coeffs.iter_mut() {
            *c = *c * factor;
        }
        out
    }

    /// Copies the coefficients onto another grid, zero-filling new modes and
    /// dropping modes outside the target band.
    pub fn on_grid(&self, grid: GridSpec) -> Self {
        let mut out = Self::zero(grid, self.real_flag);
        for (idx, c) in self.iter() {
            if grid.contains(idx) {
                out.coeffs[grid.offset(idx)] = c;
            }
        }
        if out.real_flag {
            out.zero_nyquist();
        }
        out
    }

    /// Complex collocation samples of the synthesis sum on the
    /// `(oversample·modes_x) x (oversample·modes_y)` grid. Exact for
    /// band-limited fields.
    pub fn to_physical_complex(&self, oversample: u32) -> PhysicalGrid<Complex<T>> {
        assert!(oversample >= 1, "oversample must be >= 1");
        let nx = self.grid.modes_x() as usize * oversample as usize;
        let ny = self.grid.modes_y() as usize * oversample as usize;
        let mut data = vec![Complex::new(T::zero(), T::zero()); nx * ny];

        // Scatter ĝ(m,n) into standard DFT bin order (index = mode mod size).
        for (idx, c) in self.iter() {
            let p = idx.m.rem_euclid(nx as i64) as usize;
            let q = idx.n.rem_euclid(ny as i64) as usize;
            data[p * ny + q] = c;
        }

        let mut planner = FftPlanner::<T>::new();
        let fft_y = planner.plan_fft_inverse(ny);
        let fft_x = planner.plan_fft_inverse(nx);

        // Unnormalized inverse DFT along n for each m-row, then along m.
        for row in data.chunks_exact_mut(ny) {
            fft_y.process(row);
        }
        let mut transposed = transpose(&data, nx, ny);
        for row in transposed.chunks_exact_mut(nx) {
            fft_x.process(row);
        }
        let values = transpose(&transposed, ny, nx);
        PhysicalGrid { values, nx, ny }
    }

    /// Largest modulus over the oversampled collocation samples of the field
    /// with a diagonal multiplier applied.
    ///
    /// Shortcut for `linf(multiplier applied to self)` that skips the
    /// intermediate field and the final sample reordering; the hot path of
    /// the time-quadrature probes.
    pub fn max_modulus_multiplied(
        &self,
        oversample: u32,
        mut weight: impl FnMut(FrequencyIndex) -> Complex<T>,
    ) -> T {
        // sup-norm estimates need headroom over the Nyquist rate
        assert!(oversample >= 2, "L^inf evaluation requires oversample >= 2");
        let nx = self.grid.modes_x() as usize * oversample as usize;
        let ny = self.grid.modes_y() as usize * oversample as usize;
        let mut data = vec![Complex::new(T::zero(), T::zero()); nx * ny];
        for (idx, c) in self.iter() {
            if c.re != T::zero() || c.im != T::zero() {
                let p = idx.m.rem_euclid(nx as i64) as usize;
                let q = idx.n.rem_euclid(ny as i64) as usize;
                data[p * ny + q] = c * weight(idx);
            }
        }

        let mut planner = FftPlanner::<T>::new();
        let fft_y = planner.plan_fft_inverse(ny);
        let fft_x = planner.plan_fft_inverse(nx);
        for row in data.chunks_exact_mut(ny) {
            fft_y.process(row);
        }
        let mut transposed = transpose(&data, nx, ny);
        for row in transposed.chunks_exact_mut(nx) {
            fft_x.process(row);
        }
        // the max does not care about sample order, so the second transpose
        // is skipped and moduli are compared squared
        transposed
            .iter()
            .fold(T::zero(), |acc, c| acc.max(c.norm_sqr()))
            .sqrt()
    }

    /// Real collocation samples; requires `real_flag`.
    pub fn to_physical(&self, oversample: u32) -> PhysicalGrid<T> {
        assert!(self.real_flag, "to_physical requires a real field");
        let complex = self.to_physical_complex(oversample);
        PhysicalGrid {
            values: complex.values.iter().map(|c| c.re).collect(),
            nx: complex.nx,
            ny: complex.ny,
        }
    }

    /// Builds a field from physical samples on the plain (oversample = 1)
    /// collocation grid of `grid`. Inverse of `to_physical` for band-limited
    /// data.
    pub fn from_physical_complex(samples: &[Complex<T>], grid: GridSpec, real_flag: bool) -> Self {
        let nx = grid.modes_x() as usize;
        let ny = grid.modes_y() as usize;
        assert_eq!(samples.len(), nx * ny, "sample count must match grid");

        let mut data = samples.to_vec();
        let mut planner = FftPlanner::<T>::new();
        let fft_y = planner.plan_fft_forward(ny);
        let fft_x = planner.plan_fft_forward(nx);

        for row in data.chunks_exact_mut(ny) {
            fft_y.process(row);
        }
        let mut transposed = transpose(&data, nx, ny);
        for row in transposed.chunks_exact_mut(nx) {
            fft_x.process(row);
        }
        let spectral = transpose(&transposed, ny, nx);

        let norm = T::one() / real_from_usize::<T>(nx * ny);
        let mut out = Self::zero(grid, real_flag);
        for idx in grid.indices() {
            let p = idx.m.rem_euclid(nx as i64) as usize;
            let q = idx.n.rem_euclid(ny as i64) as usize;
            out.coeffs[grid.offset(idx)] = spectral[p * ny + q] * norm;
        }
        if real_flag {
            out.zero_nyquist();
        }
        out
    }
}

fn real_from_usize<T: Real>(n: usize) -> T {
    T::from_usize(n).expect("grid size convertible to scalar type")
}

fn transpose<T: Copy>(data: &[T], rows: usize, cols: usize) -> Vec<T> {
    let mut out = Vec::with_capacity(data.len());
    for c in 0..cols {
        for r in 0..rows {
            out.push(data[r * cols + c]);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn cos_x(grid: GridSpec) -> SpectralField<f64> {
        SpectralField::synthesize(
            &[
                (FrequencyIndex::new(1, 0), Complex::new(0.5, 0.0)),
                (FrequencyIndex::new(-1, 0), Complex::new(0.5, 0.0)),
            ],
            grid,
            true,
        )
        .unwrap()
    }

    #[test]
    fn synthesize_cos_and_evaluate() {
        let grid = GridSpec::new(16, 16, 1).unwrap();
        let f = cos_x(grid);
        for os in [1u32, 2, 3] {
            let phys = f.to_physical(os);
            for j in 0..phys.nx {
                let x = 2.0 * std::f64::consts::PI * j as f64 / phys.nx as f64;
                for k in 0..phys.ny {
                    assert_abs_diff_eq!(phys.values[j * phys.ny + k], x.cos(), epsilon = 1e-12);
                }
            }
        }
    }

    #[test]
    fn synthesize_empty_is_zero() {
        let grid = GridSpec::new(8, 8, 1).unwrap();
        let f = SpectralField::<f64>::synthesize(&[], grid, true).unwrap();
        assert_eq!(f.l2_norm(), 0.0);
        assert!(f.to_physical(2).values.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn constant_field_evaluates_to_constant() {
        let grid = GridSpec::new(8, 8, 1).unwrap();
        let f = SpectralField::synthesize(
            &[(FrequencyIndex::new(0, 0), Complex::new(2.5, 0.0))],
            grid,
            true,
        )
        .unwrap();
        let phys = f.to_physical(2);
        for &v in &phys.values {
            assert_abs_diff_eq!(v, 2.5, epsilon = 1e-13);
        }
    }

    #[test]
    fn hermitian_autocompletion() {
        let grid = GridSpec::new(8, 8, 1).unwrap();
        let f = SpectralField::synthesize(
            &[(FrequencyIndex::new(1, 1), Complex::new(0.0, 1.0))],
            grid,
            true,
        )
        .unwrap();
        assert_eq!(
            f.coeff(FrequencyIndex::new(-1, -1)),
            Complex::new(0.0, -1.0)
        );
        // And the synthesized function is genuinely real.
        let phys = f.to_physical_complex(2);
        for c in &phys.values {
            assert_abs_diff_eq!(c.im, 0.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn hermitian_violation_detected() {
        let grid = GridSpec::new(8, 8, 1).unwrap();
        let err = SpectralField::synthesize(
            &[
                (FrequencyIndex::new(1, 1), Complex::new(0.0, 1.0)),
                (FrequencyIndex::new(-1, -1), Complex::new(0.0, 1.0)),
            ],
            grid,
            true,
        )
        .unwrap_err();
        assert!(matches!(err, CoreError::HermitianViolation { .. }));
    }

    #[test]
    fn out_of_range_index_rejected() {
        let grid = GridSpec::new(8, 8, 1).unwrap();
        let err = SpectralField::<f64>::synthesize(
            &[(FrequencyIndex::new(4, 0), Complex::new(1.0, 0.0))],
            grid,
            true,
        )
        .unwrap_err();
        assert!(matches!(err, CoreError::IndexOutOfRange { .. }));
    }

    #[test]
    fn nyquist_rows_zeroed_for_real_fields() {
        let grid = GridSpec::new(8, 8, 1).unwrap();
        let f = SpectralField::synthesize(
            &[(FrequencyIndex::new(-4, 2), Complex::new(1.0, 0.0))],
            grid,
            true,
        )
        .unwrap();
        assert_eq!(f.coeff(FrequencyIndex::new(-4, 2)).norm(), 0.0);
    }

    #[test]
    fn physical_roundtrip_is_exact() {
        let grid = GridSpec::new(16, 8, 1).unwrap();
        let f = SpectralField::synthesize(
            &[
                (FrequencyIndex::new(3, -2), Complex::new(0.7, 0.1)),
                (FrequencyIndex::new(5, 1), Complex::new(-0.2, 0.4)),
                (FrequencyIndex::new(0, 0), Complex::new(1.0, 0.0)),
            ],
            grid,
            true,
        )
        .unwrap();
        let phys = f.to_physical_complex(1);
        let back = SpectralField::from_physical_complex(&phys.values, grid, true);
        for (idx, c) in f.iter() {
            let d = back.coeff(idx) - c;
            assert!(d.norm() < 1e-13, "mismatch at {idx:?}: {d}");
        }
    }

    #[test]
    fn f32_instantiation_works() {
        let grid = GridSpec::new(16, 16, 1).unwrap();
        let f = SpectralField::<f32>::synthesize(
            &[
                (FrequencyIndex::new(1, 0), Complex::new(0.5, 0.0)),
                (FrequencyIndex::new(-1, 0), Complex::new(0.5, 0.0)),
            ],
            grid,
            true,
        )
        .unwrap();
        let phys = f.to_physical(2);
        let max = phys.values.iter().fold(0.0f32, |a, &v| a.max(v.abs()));
        assert!((max - 1.0).abs() < 1e-5);
    }
}
