//! Poisson-summation sanity check `Σ_m f̂(2πm) = Σ_m f(m)`.
//!
//! Transform convention: `f̂(ξ) = ∫_R f(x) e^{-i x ξ} dx`, so the lattice dual
//! of `Z` is `2πZ` — the identity is checked exactly in this normalization to
//! avoid the classic `2π` mismatch.

use serde::{Deserialize, Serialize};
use shrira_core::bump::psi0;
use shrira_core::quadrature;

/// 1-D Schwartz-class test families.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum PoissonFamily {
    /// `f(x) = e^{-x²/(2σ²)}`, with the closed-form transform
    /// `f̂(ξ) = σ√(2π) e^{-σ²ξ²/2}`.
    Gaussian { sigma: f64 },
    /// The smooth bump `ψ₀` convolved with the same Gaussian; both `f` and
    /// `f̂` are evaluated by quadrature.
    BumpConvolved { sigma: f64 },
}

/// Result of a truncated Poisson-summation comparison.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PoissonCheck {
    /// `Σ_{|m| <= truncation} f̂(2πm)`
    pub lhs: f64,
    /// `Σ_{|m| <= truncation} f(m)`
    pub rhs: f64,
    /// Upper bound on the two neglected tails combined.
    pub tail_bound: f64,
}

/// Evaluates both truncated sums for the chosen family.
pub fn poisson_check(family: PoissonFamily, truncation: u32) -> PoissonCheck {
    let m_max = i64::from(truncation);
    let mut lhs = 0.0;
    let mut rhs = 0.0;
    for m in -m_max..=m_max {
        lhs += transform_at(family, 2.0 * std::f64::consts::PI * m as f64);
        rhs += value_at(family, m as f64);
    }
    PoissonCheck {
        lhs,
        rhs,
        tail_bound: tail_bound(family, truncation),
    }
}

fn gaussian(x: f64, sigma: f64) -> f64 {
    (-x * x / (2.0 * sigma * sigma)).exp()
}

fn gaussian_transform(xi: f64, sigma: f64) -> f64 {
    sigma * (2.0 * std::f64::consts::PI).sqrt() * (-sigma * sigma * xi * xi / 2.0).exp()
}

fn value_at(family: PoissonFamily, x: f64) -> f64 {
    match family {
        PoissonFamily::Gaussian { sigma } => gaussian(x, sigma),
        PoissonFamily::BumpConvolved { sigma } => {
            // (ψ₀ * g_σ)(x), integrated over the support of ψ₀. The panel
            // count absorbs ψ₀'s steep flanks near |y| = 2.
            quadrature::composite(|y| psi0(y) * gaussian(x - y, sigma), -2.0, 2.0, 8, 64)
        }
    }
}

fn transform_at(family: PoissonFamily, xi: f64) -> f64 {
    match family {
        PoissonFamily::Gaussian { sigma } => gaussian_transform(xi, sigma),
        PoissonFamily::BumpConvolved { sigma } => {
            // (ψ₀ * g)^ = ψ̂₀ · ĝ; ψ₀ is even so ψ̂₀(ξ) = ∫ ψ₀(y) cos(yξ) dy.
            // The panel count tracks the oscillation over the support [-2, 2];
            // the floor of 64 resolves ψ₀'s steep flanks near |y| = 2.
            let panels = (64.0 + 2.0 * xi.abs()).ceil() as usize;
            let psi_hat = quadrature::composite(|y| psi0(y) * (y * xi).cos(), -2.0, 2.0, 8, panels);
            psi_hat * gaussian_transform(xi, sigma)
        }
    }
}

/// Crude but valid bound on the two neglected tails: for `m > M`,
/// `e^{-m²/c} <= r^m` with `r = e^{-M/c}`, summed geometrically.
fn tail_bound(family: PoissonFamily, truncation: u32) -> f64 {
    let m = f64::from(truncation).max(1.0);
    let (sigma, amp) = match family {
        PoissonFamily::Gaussian { sigma } => (sigma, 1.0),
        // |ψ₀ * g| <= ‖ψ₀‖₁ · sup g <= 4, shifted by the support radius 2
        PoissonFamily::BumpConvolved { sigma } => (sigma, 4.0),
    };
    let shift: f64 = match family {
        PoissonFamily::Gaussian { .. } => 0.0,
        PoissonFamily::BumpConvolved { .. } => 2.0,
    };
    let geo = |r: f64, first: f64| {
        if r >= 1.0 {
            f64::INFINITY
        } else {
            2.0 * first / (1.0 - r)
        }
    };
    let meff = (m - shift).max(1.0);
    let r_space = (-meff / (2.0 * sigma * sigma)).exp();
    let space = geo(r_space, amp * gaussian(meff, sigma));
    let two_pi = 2.0 * std::f64::consts::PI;
    let r_freq = (-sigma * sigma * two_pi * two_pi * m / 2.0).exp();
    let freq = geo(r_freq, amp * gaussian_transform(two_pi * (m + 1.0), sigma));
    space + freq
}
