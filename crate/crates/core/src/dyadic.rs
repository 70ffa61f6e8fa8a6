//! Sharp dyadic frequency projections and the equivalent `H^s` norm.
//!
//! The one-dimensional cutoffs `Q_x^k` restrict `|m|` to `[2^{k-1}, 2^k)` for
//! `k >= 1` and to `{0}` for `k = 0` (likewise `Q_y^k` in `n`), and
//! `Q̃^k = Σ_{k'<=k} Q^{k'}`. The two-dimensional projection for `N = 2^k` is
//!
//! `P̃_N = Q̃_x^k Q_y^k + Q̃_y^{k-1} Q_x^k`,
//!
//! i.e. the set of modes whose larger dyadic band index equals `k`, and
//! `P̃_0 = Q_x^0 Q_y^0` is the single `(0,0)` mode. With this reading the
//! shells partition `Z²` exactly; the shell `N = 1` is empty, because every
//! nonzero frequency has band index at least 1 and `(0,0)` already belongs to
//! `N = 0`.
//!
//! All cutoffs compare integers; there are no floating-point thresholds.

use serde::{Deserialize, Serialize};

use crate::error::{CoreError, Result};
use crate::field::SpectralField;
use crate::scalar::{real, Real};

/// Element of `P = {0, 1, 2, 4, ..., 2^k, ...}` indexing the projections.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DyadicIndex {
    Zero,
    /// `N = 2^k`.
    Pow(u32),
}

impl DyadicIndex {
    /// Parses a value from `P`; anything other than 0 or a power of two is
    /// rejected.
    pub fn from_value(n: u64) -> Result<Self> {
        match n {
            0 => Ok(Self::Zero),
            n if n.is_power_of_two() => Ok(Self::Pow(n.trailing_zeros())),
            _ => Err(CoreError::InvalidGrid(format!(
                "{n} is not a dyadic index (0 or a power of two)"
            ))),
        }
    }

    pub fn value(&self) -> u64 {
        match self {
            Self::Zero => 0,
            Self::Pow(k) => 1u64 << k,
        }
    }

    /// `1 ∨ N`.
    pub fn one_or_n(&self) -> u64 {
        self.value().max(1)
    }
}

/// Dyadic band index of a 1-D frequency: 0 for `j = 0`, else the `k >= 1` with
/// `|j| ∈ [2^{k-1}, 2^k)`.
fn band_index(j: i64) -> u32 {
    let a = j.unsigned_abs();
    if a == 0 {
        0
    } else {
        64 - a.leading_zeros()
    }
}

/// The unique shell containing the mode `(m, n)`.
pub fn shell_of(m: i64, n: i64) -> DyadicIndex {
    if m == 0 && n == 0 {
        DyadicIndex::Zero
    } else {
        DyadicIndex::Pow(band_index(m).max(band_index(n)))
    }
}

/// All dyadic indices relevant on a grid, in increasing order:
/// `0, 1, 2, 4, ..., half-band`.
pub fn shells(grid: crate::grid::GridSpec) -> Vec<DyadicIndex> {
    let band = grid.half_x().max(grid.half_y()) as u64;
    let mut out = vec![DyadicIndex::Zero];
    let mut k = 0;
    while (1u64 << k) <= band {
        out.push(DyadicIndex::Pow(k));
        k += 1;
    }
    out
}

/// `Q_x^k`: restriction to the dyadic band of `|m|`.
pub fn q_x<T: Real>(f: &SpectralField<T>, k: u32) -> SpectralField<T> {
    keep(f, |m, _| in_band(m, k))
}

/// `Q_y^k`: restriction to the dyadic band of `|n|`.
pub fn q_y<T: Real>(f: &SpectralField<T>, k: u32) -> SpectralField<T> {
    keep(f, |_, n| in_band(n, k))
}

/// `Q̃_x^k = Σ_{k' <= k} Q_x^{k'}`: restriction to `|m| < 2^k`.
pub fn q_x_tilde<T: Real>(f: &SpectralField<T>, k: u32) -> SpectralField<T> {
    keep(f, |m, _| below_band(m, k))
}

/// `Q̃_y^k`: restriction to `|n| < 2^k`.
pub fn q_y_tilde<T: Real>(f: &SpectralField<T>, k: u32) -> SpectralField<T> {
    keep(f, |_, n| below_band(n, k))
}

/// `P̃_N`, the two-dimensional dyadic projection.
///
/// Errors if `N` exceeds the grid half-band.
pub fn p_n<T: Real>(f: &SpectralField<T>, n_idx: DyadicIndex) -> Result<SpectralField<T>> {
    let band = f.grid().half_x().max(f.grid().half_y()) as u64;
    if n_idx.value() > band {
        return Err(CoreError::ShellOutOfRange {
            n: n_idx.value(),
            band: band as u32,
        });
    }
    Ok(keep(f, move |m, n| shell_of(m, n) == n_idx))
}

/// The equivalent norm `(Σ_{N∈P} (1 ∨ N)^{2s} ‖P̃_N g‖²_{L²})^{1/2}`,
/// with the `ℓ²` coefficient norm standing in for `‖·‖_{L²}`.
///
/// Since the shells partition the retained band, this is evaluated in one pass
/// by classifying each mode.
pub fn equivalent_norm<T: Real>(f: &SpectralField<T>, s: f64) -> T {
    assert!(s >= 0.0, "equivalent_norm requires s >= 0, got {s}");
    let mut acc = T::zero();
    for (idx, c) in f.iter() {
        let n = shell_of(idx.m, idx.n).one_or_n() as f64;
        acc = acc + c.norm_sqr() * real::<T>(n.powf(2.0 * s));
    }
    acc.sqrt()
}

fn in_band(j: i64, k: u32) -> bool {
    if k == 0 {
        j == 0
    } else {
        let a = j.unsigned_abs();
        (1u64 << (k - 1)) <= a && a < (1u64 << k)
    }
}

fn below_band(j: i64, k: u32) -> bool {
    j.unsigned_abs() < (1u64 << k)
}

fn keep<T: Real>(f: &SpectralField<T>, pred: impl Fn(i64, i64) -> bool) -> SpectralField<T> {
    f.map_multiplier(true, |idx| {
        if pred(idx.m, idx.n) {
            num_complex::Complex::new(T::one(), T::zero())
        } else {
            num_complex::Complex::new(T::zero(), T::zero())
        }
    })
}
