//! Quadratic Weyl exponential sums `S(f) = Σ_{n=1}^N e^{2πi f(n)}` and the
//! Weyl inequality bound for degree 2 (`K = 2^{k-1} = 2`).

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::rational::{dirichlet_approx, RationalApprox};

/// The quadratic phase `f(z) = α z² + β z`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RealQuadratic {
    pub alpha: f64,
    pub beta: f64,
}

impl RealQuadratic {
    pub fn new(alpha: f64, beta: f64) -> Self {
        Self { alpha, beta }
    }
}

/// `Σ_{n=1}^N e^{2πi(α n² + β n)}`.
///
/// The phase is accumulated by second differences and reduced mod 1 at every
/// step, so it never grows and the evaluation stays accurate for large `N`;
/// the complex accumulation is Kahan-compensated.
pub fn weyl_sum(f: RealQuadratic, n_terms: u64) -> Complex<f64> {
    // f(n+1) - f(n) = α(2n+1) + β, second difference 2α.
    let mut phase = (f.alpha + f.beta).rem_euclid(1.0);
    let mut diff = (3.0 * f.alpha + f.beta).rem_euclid(1.0);
    let incr = (2.0 * f.alpha).rem_euclid(1.0);

    let (mut sum_re, mut sum_im) = (0.0f64, 0.0f64);
    let (mut c_re, mut c_im) = (0.0f64, 0.0f64);
    for _ in 0..n_terms {
        let (s, c) = (2.0 * std::f64::consts::PI * phase).sin_cos();
        // Kahan update of both components
        let y = c - c_re;
        let t = sum_re + y;
        c_re = (t - sum_re) - y;
        sum_re = t;
        let y = s - c_im;
        let t = sum_im + y;
        c_im = (t - sum_im) - y;
        sum_im = t;

        phase = (phase + diff).rem_euclid(1.0);
        diff = (diff + incr).rem_euclid(1.0);
    }
    Complex::new(sum_re, sum_im)
}

/// Precondition failure of the Weyl inequality: the Dirichlet approximant did
/// not satisfy `|α - a/q| <= 1/q²` (enlarge `Q`).
#[derive(Debug, Clone, PartialEq)]
pub struct WeylError {
    pub approx: RationalApprox,
}

impl std::fmt::Display for WeylError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Dirichlet approximant {}/{} of {} violates |alpha - a/q| <= 1/q^2; enlarge Q",
            self.approx.a, self.approx.q, self.approx.alpha
        )
    }
}

impl std::error::Error for WeylError {}

/// Right-hand side of the Weyl inequality for `k = 2`, with constant 1:
/// `N^{1+ε} (N^{-1} + q^{-1} + q N^{-2})^{1/2}`,
/// where `q` comes from the Dirichlet approximation of the leading
/// coefficient with bound `Q`.
///
/// Returns the bound together with the approximation used.
pub fn weyl_bound_rhs(
    f: RealQuadratic,
    n_terms: u64,
    eps: f64,
    q_for_dirichlet: f64,
) -> Result<(f64, RationalApprox), WeylError> {
    assert!(eps > 0.0, "Weyl inequality needs eps > 0");
    let approx = dirichlet_approx(f.alpha, q_for_dirichlet);
    let q = approx.q as f64;
    if approx.error() > 1.0 / (q * q) {
        return Err(WeylError { approx });
    }
    let n = n_terms as f64;
    let bound = n.powf(1.0 + eps) * (1.0 / n + 1.0 / q + q / (n * n)).sqrt();
    Ok((bound, approx))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    /// Direct evaluation without the incremental reduction; small N only.
    fn naive_sum(f: RealQuadratic, n_terms: u64) -> Complex<f64> {
        let mut acc = Complex::new(0.0, 0.0);
        for n in 1..=n_terms {
            let nf = n as f64;
            let phase = 2.0 * std::f64::consts::PI * (f.alpha * nf * nf + f.beta * nf);
            acc += Complex::new(phase.cos(), phase.sin());
        }
        acc
    }

    #[test]
    fn zero_phase_counts_terms() {
        let s = weyl_sum(RealQuadratic::new(0.0, 0.0), 7);
        assert_abs_diff_eq!(s.re, 7.0, epsilon = 1e-13);
        assert_abs_diff_eq!(s.im, 0.0, epsilon = 1e-13);
    }

    #[test]
    fn half_square_phase_cancels_in_pairs() {
        // e^{iπn²} = (-1)^n, so the partial sum over 1..=10 vanishes
        let s = weyl_sum(RealQuadratic::new(0.5, 0.0), 10);
        assert_abs_diff_eq!(s.norm(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn quarter_linear_phase_sums_roots_of_unity() {
        // i + i² + i³ + i⁴ = 0
        let s = weyl_sum(RealQuadratic::new(0.0, 0.25), 4);
        assert_abs_diff_eq!(s.norm(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn matches_naive_sum() {
        let f = RealQuadratic::new(0.137, -0.52);
        for n in [1u64, 13, 200] {
            let a = weyl_sum(f, n);
            let b = naive_sum(f, n);
            assert!((a - b).norm() < 1e-10, "mismatch at N = {n}");
        }
    }

    #[test]
    fn bound_example_n100_q10() {
        // alpha = 1/10 gives q = 10 under Q = 10
        let f = RealQuadratic::new(0.1, 0.3);
        let (bound, approx) = weyl_bound_rhs(f, 100, 0.1, 10.0).unwrap();
        assert_eq!(approx.q, 10);
        let expect = 100f64.powf(1.1) * (0.01 + 0.1 + 0.001f64).sqrt();
        assert_abs_diff_eq!(bound, expect, epsilon = 1e-12);
        assert!((52.0..53.5).contains(&bound), "bound = {bound}");
    }

    #[test]
    fn rational_alpha_gives_trivial_bound() {
        // integer alpha -> q = 1 -> no cancellation guaranteed
        let f = RealQuadratic::new(3.0, 0.7);
        for n in [16u64, 256] {
            let (bound, approx) = weyl_bound_rhs(f, n, 0.05, 40.0).unwrap();
            assert_eq!(approx.q, 1);
            assert!(bound >= (n as f64).powf(1.05));
        }
    }

    #[test]
    fn fitted_constant_stable_across_octaves() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let samples: Vec<RealQuadratic> = (0..100)
            .map(|_| RealQuadratic::new(rng.gen_range(0.0..1.0), rng.gen_range(0.0..1.0)))
            .collect();
        let mut per_n_max = Vec::new();
        let mut n = 16u64;
        while n <= 4096 {
            let mut worst: f64 = 0.0;
            for f in &samples {
                let s = weyl_sum(*f, n).norm();
                let (bound, _) = weyl_bound_rhs(*f, n, 0.05, n as f64).unwrap();
                worst = worst.max(s / bound);
            }
            per_n_max.push(worst);
            n *= 2;
        }
        let global = per_n_max.iter().cloned().fold(0.0, f64::max);
        let last = *per_n_max.last().unwrap();
        assert!(
            last <= 1.2 * global,
            "fitted constant trends upward: per-octave maxima {per_n_max:?}"
        );
    }

    proptest! {
        #[test]
        fn triangle_inequality(alpha in -5.0f64..5.0, beta in -5.0f64..5.0, n in 1u64..2000) {
            let s = weyl_sum(RealQuadratic::new(alpha, beta), n).norm();
            prop_assert!(s <= n as f64 + 1e-9);
        }

        #[test]
        fn integer_shifts_leave_the_sum_unchanged(
            // dyadic coefficients so that alpha + da is exactly representable
            // and the test sees only the algorithm, not input rounding
            ka in 0u64..(1 << 20),
            kb in 0u64..(1 << 20),
            da in -3i64..=3,
            db in -3i64..=3,
            n in 1u64..1000,
        ) {
            let alpha = ka as f64 / (1u64 << 20) as f64;
            let beta = kb as f64 / (1u64 << 20) as f64;
            let base = weyl_sum(RealQuadratic::new(alpha, beta), n);
            let shifted = weyl_sum(
                RealQuadratic::new(alpha + da as f64, beta + db as f64),
                n,
            );
            prop_assert!((base - shifted).norm() < 1e-9);
        }
    }
}
