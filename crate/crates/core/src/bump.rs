//! Concrete smooth cutoff functions.
//!
//! Two bumps are used throughout the probes:
//!
//! * `psi0`: even, `≡ 1` on `[-1, 1]`, supported in `[-2, 2]`;
//! * `mollifier_rho`: radial profile, `≡ 1` on `[0, 1/2)`, `≡ 0` on `(1, ∞)`.
//!
//! Both use the same exponential step `exp(1 - 1/(1 - u²))` on the transition
//! band; only the support and value conditions matter for the estimates, the
//! particular shape just shifts constants.

use crate::scalar::{real, Real};

/// Decays from 1 at `u = 0` to 0 at `u = 1`; the transition profile shared by
/// both cutoffs.
#[inline]
fn step_down<T: Real>(u: T) -> T {
    if u <= T::zero() {
        return T::one();
    }
    if u >= T::one() {
        return T::zero();
    }
    (T::one() - T::one() / (T::one() - u * u)).exp()
}

/// Smooth even cutoff `ψ₀: R -> [0,1]`, `= 1` for `|x| <= 1`, `= 0` for
/// `|x| >= 2`.
pub fn psi0<T: Real>(x: T) -> T {
    step_down(x.abs() - T::one())
}

/// `ψ₀²`, the weight appearing in the kernel sums.
pub fn psi0_sq<T: Real>(x: T) -> T {
    let v = psi0(x);
    v * v
}

/// Radial mollifier profile `ρ: [0,∞) -> [0,1]`, `= 1` on `[0, 1/2)`, `= 0` on
/// `(1, ∞)`. The flat regions return exactly `1` and `0`.
pub fn mollifier_rho<T: Real>(r: T) -> T {
    let half = real::<T>(0.5);
    step_down((r - half) / half)
}
