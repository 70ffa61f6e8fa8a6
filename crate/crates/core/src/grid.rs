//! Torus discretization parameters and frequency indexing.

use serde::{Deserialize, Serialize};

use crate::error::{CoreError, Result};

/// Discretization of `T² = R²/(2πZ)²`.
///
/// `modes_x` frequencies are retained in x, covering `m ∈ [-modes_x/2, modes_x/2)`,
/// and likewise in y. Mode counts are powers of two so that dyadic shells align
/// exactly with the truncation. `oversample` is the zero-padding factor used
/// when a field is evaluated on the collocation grid for `L^∞` norms; it must
/// be at least 2 for those (the default is 4).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridSpec {
    modes_x: u32,
    modes_y: u32,
    oversample: u32,
}

impl GridSpec {
    /// Fourier convention tag: synthesis `f = Σ ĝ(m,n) e^{i(mx+ny)}` is an
    /// unnormalized sum, analysis carries the `(2π)^{-2}` factor.
    pub const NORMALIZATION: &'static str = "synthesis-unnormalized";

    /// Default zero-padding factor for `L^∞` evaluation.
    pub const DEFAULT_OVERSAMPLE: u32 = 4;

    /// Square grid with the default oversampling.
    pub fn square(modes: u32) -> Result<Self> {
        Self::new(modes, modes, Self::DEFAULT_OVERSAMPLE)
    }

    pub fn new(modes_x: u32, modes_y: u32, oversample: u32) -> Result<Self> {
        for (name, m) in [("modes_x", modes_x), ("modes_y", modes_y)] {
            if m < 2 || !m.is_power_of_two() {
                return Err(CoreError::InvalidGrid(format!(
                    "{name} = {m} must be a power of two >= 2"
                )));
            }
        }
        if oversample == 0 {
            return Err(CoreError::InvalidGrid("oversample must be >= 1".into()));
        }
        Ok(Self {
            modes_x,
            modes_y,
            oversample,
        })
    }

    pub fn modes_x(&self) -> u32 {
        self.modes_x
    }

    pub fn modes_y(&self) -> u32 {
        self.modes_y
    }

    pub fn oversample(&self) -> u32 {
        self.oversample
    }

    /// Half-band in x: retained `m` satisfy `-half_x <= m < half_x`.
    pub fn half_x(&self) -> i64 {
        i64::from(self.modes_x) / 2
    }

    pub fn half_y(&self) -> i64 {
        i64::from(self.modes_y) / 2
    }

    /// Total number of retained coefficients.
    pub fn len(&self) -> usize {
        self.modes_x as usize * self.modes_y as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Largest `m² + n²` over the retained (non-Nyquist) band; the fastest
    /// dispersive phase on this grid.
    pub fn max_phase(&self) -> f64 {
        let mx = (self.half_x() - 1).max(0) as f64;
        let my = (self.half_y() - 1).max(0) as f64;
        mx * mx + my * my
    }

    pub fn contains(&self, idx: FrequencyIndex) -> bool {
        idx.m >= -self.half_x()
            && idx.m < self.half_x()
            && idx.n >= -self.half_y()
            && idx.n < self.half_y()
    }

    /// Flat storage offset of a frequency index (m-major, both ascending from
    /// the most negative frequency). Callers must check `contains` first.
    pub(crate) fn offset(&self, idx: FrequencyIndex) -> usize {
        debug_assert!(self.contains(idx));
        let row = (idx.m + self.half_x()) as usize;
        let col = (idx.n + self.half_y()) as usize;
        row * self.modes_y as usize + col
    }

    /// Iterates all retained frequency indices in storage order.
    pub fn indices(&self) -> impl Iterator<Item = FrequencyIndex> + '_ {
        let (hx, hy) = (self.half_x(), self.half_y());
        (-hx..hx).flat_map(move |m| (-hy..hy).map(move |n| FrequencyIndex { m, n }))
    }

    /// Same mode counts, different oversampling.
    pub fn with_oversample(&self, oversample: u32) -> Result<Self> {
        Self::new(self.modes_x, self.modes_y, oversample)
    }
}

/// A single Fourier mode `(m, n) ∈ Z²`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FrequencyIndex {
    pub m: i64,
    pub n: i64,
}

impl FrequencyIndex {
    pub fn new(m: i64, n: i64) -> Self {
        Self { m, n }
    }

    /// The Hermitian partner `(-m, -n)`.
    pub fn conjugate_partner(&self) -> Self {
        Self {
            m: -self.m,
            n: -self.n,
        }
    }

    /// `1 + m² + n²`, the Bessel weight base.
    pub fn bessel_base(&self) -> f64 {
        1.0 + (self.m * self.m + self.n * self.n) as f64
    }
}
