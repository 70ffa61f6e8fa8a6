//! The free dispersive group `W(t)` and the Duhamel step for the
//! inhomogeneous linear equation.

use num_complex::Complex;

use crate::error::{CoreError, Result};
use crate::field::SpectralField;
use crate::ops::partial_x;
use crate::quadrature;
use crate::scalar::{real, Real};

/// Applies the free group `W(t)`: each coefficient with `m != 0` is multiplied
/// by `e^{-i t sgn(m)(m² + n²)}`; the `m = 0` row is a fixed point
/// (`sgn(0) = 0`, consistent with the Hilbert transform annihilating it).
///
/// The multiplier is unimodular, so every `H^s` norm is preserved.
pub fn propagate<T: Real>(u0: &SpectralField<T>, t: f64) -> SpectralField<T> {
    u0.map_multiplier(true, |idx| {
        if idx.m == 0 {
            Complex::new(T::one(), T::zero())
        } else {
            let phase = -t * (idx.m.signum() as f64) * ((idx.m * idx.m + idx.n * idx.n) as f64);
            Complex::new(real::<T>(phase.cos()), real::<T>(phase.sin()))
        }
    })
}

/// `‖W(t)u‖_{L^∞}` on the oversampled collocation grid, with the group phase
/// applied on the fly; equal to `linf_norm_oversampled(propagate(u, t), ·)`
/// without materializing the propagated field.
pub fn linf_norm_free_flow<T: Real>(u: &SpectralField<T>, t: f64, oversample: u32) -> T {
    u.max_modulus_multiplied(oversample, |idx| {
        if idx.m == 0 {
            Complex::new(T::one(), T::zero())
        } else {
            let phase = -t * (idx.m.signum() as f64) * ((idx.m * idx.m + idx.n * idx.n) as f64);
            Complex::new(real::<T>(phase.cos()), real::<T>(phase.sin()))
        }
    })
}

/// One Duhamel step for `w_t + HΔw + ∂_x F = 0`:
///
/// `w(t1) = W(t1-t0) w(t0) - ∫_{t0}^{t1} W(t1-s) ∂_x F(s) ds`,
///
/// with the integral evaluated by a `quadrature_nodes`-point Gauss–Legendre
/// rule; exact when `F` is polynomial in time up to the rule's degree.
///
/// `forcing(s)` supplies the flux `F(s)` (the x-derivative is applied here).
pub fn duhamel_step<T: Real>(
    w: &SpectralField<T>,
    mut forcing: impl FnMut(f64) -> SpectralField<T>,
    t0: f64,
    t1: f64,
    quadrature_nodes: usize,
) -> Result<SpectralField<T>> {
    if t1 <= t0 {
        return Err(CoreError::InvalidInterval { t0, t1 });
    }
    let mut out = propagate(w, t1 - t0);
    let points = quadrature::composite_points(t0, t1, quadrature_nodes, 1);
    for (s, weight) in points {
        let term = propagate(&partial_x(&forcing(s)), t1 - s);
        out = out.sub(&term.scaled(real::<T>(weight)))?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{FrequencyIndex, GridSpec};
    use crate::ops;
    use approx::assert_abs_diff_eq;

    type F = SpectralField<f64>;

    fn grid() -> GridSpec {
        GridSpec::new(16, 16, 1).unwrap()
    }

    fn mode(m: i64, n: i64, re: f64, im: f64) -> F {
        F::synthesize(
            &[(FrequencyIndex::new(m, n), Complex::new(re, im))],
            grid(),
            false,
        )
        .unwrap()
    }

    fn random_real_field(seed: u64) -> F {
        use rand::{Rng, SeedableRng};
        let g = grid();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut list = Vec::new();
        for m in 0..g.half_x() {
            for n in -g.half_y() + 1..g.half_y() {
                if m == 0 && n < 0 {
                    continue;
                }
                let c = Complex::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                let c = if m == 0 && n == 0 {
                    Complex::new(c.re, 0.0)
                } else {
                    c
                };
                list.push((FrequencyIndex::new(m, n), c));
            }
        }
        F::synthesize(&list, g, true).unwrap()
    }

    #[test]
    fn t_zero_is_identity() {
        let f = random_real_field(1);
        assert_eq!(propagate(&f, 0.0).coeffs(), f.coeffs());
    }

    #[test]
    fn single_mode_phase() {
        // mode (1,1) at t = π/2: phase -t·sgn(1)·(1+1) = -π, factor -1
        let f = mode(1, 1, 1.0, 0.0);
        let p = propagate(&f, std::f64::consts::FRAC_PI_2);
        let c = p.coeff(FrequencyIndex::new(1, 1));
        assert_abs_diff_eq!(c.re, -1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(c.im, 0.0, epsilon = 1e-14);
    }

    #[test]
    fn m_zero_row_is_fixed() {
        let f = mode(0, 3, 0.3, 0.9);
        for t in [0.1, 1.7, -12.0] {
            assert_eq!(propagate(&f, t).coeffs(), f.coeffs());
        }
    }

    #[test]
    fn group_law() {
        let f = random_real_field(2);
        for (s, t) in [(0.3, 0.4), (-1.2, 0.7), (1.9, -1.9)] {
            let a = propagate(&propagate(&f, s), t);
            let b = propagate(&f, s + t);
            let diff = a.sub(&b).unwrap().l2_norm();
            assert!(diff <= 1e-12 * f.l2_norm(), "group law broken: {diff:e}");
        }
    }

    #[test]
    fn unitarity_in_every_sobolev_norm() {
        let f = random_real_field(3);
        for s in [0.0, 1.0, 1.75, 3.0] {
            let before = ops::sobolev_norm(&f, s);
            let after = ops::sobolev_norm(&propagate(&f, 0.83), s);
            assert!(((after - before) / before).abs() < 1e-12);
        }
    }

    #[test]
    fn commutes_with_multipliers() {
        let f = random_real_field(4);
        let t = 0.37;
        let a = propagate(&ops::hilbert_x(&f), t);
        let b = ops::hilbert_x(&propagate(&f, t));
        assert!(a.sub(&b).unwrap().l2_norm() < 1e-13);
        let shell = crate::dyadic::DyadicIndex::Pow(2);
        let c = crate::dyadic::p_n(&propagate(&f, t), shell).unwrap();
        let d = propagate(&crate::dyadic::p_n(&f, shell).unwrap(), t);
        assert!(c.sub(&d).unwrap().l2_norm() < 1e-13);
    }

    #[test]
    fn solves_the_linear_equation() {
        // finite-difference time derivative of W(t)u matches -HΔ W(t)u to
        // O(h²); low modes keep the third time derivative (~ (m²+n²)³) small.
        let f = crate::dyadic::q_x_tilde(&crate::dyadic::q_y_tilde(&random_real_field(5), 2), 2);
        let t = 0.21;
        let rhs = ops::hilbert_x(&ops::laplacian(&propagate(&f, t))).scaled(-1.0);
        let mut errs = Vec::new();
        for h in [1e-3, 5e-4] {
            let fd = propagate(&f, t + h)
                .sub(&propagate(&f, t - h))
                .unwrap()
                .scaled(1.0 / (2.0 * h));
            errs.push(fd.sub(&rhs).unwrap().l2_norm());
        }
        // halving h divides the error by ~4
        assert!(errs[1] < errs[0] / 3.0, "errors {errs:?} not O(h²)");
        assert!(errs[0] < 5e-3, "FD residual too large: {:e}", errs[0]);
    }

    #[test]
    fn fused_free_flow_linf_matches_two_step_evaluation() {
        let f = random_real_field(11);
        for t in [0.0, 0.37, -2.1] {
            let fused = linf_norm_free_flow(&f, t, 2);
            let two_step = crate::ops::linf_norm_oversampled(&propagate(&f, t), 2);
            assert!(
                (fused - two_step).abs() <= 1e-14 * two_step.max(1.0),
                "fused {fused} vs {two_step} at t = {t}"
            );
        }
    }

    #[test]
    fn duhamel_zero_forcing_reduces_to_group() {
        let f = random_real_field(6);
        let zero = F::zero(grid(), true);
        let got = duhamel_step(&f, |_| zero.clone(), 0.0, 0.4, 8).unwrap();
        let expect = propagate(&f, 0.4);
        assert!(got.sub(&expect).unwrap().l2_norm() < 1e-13);
    }

    #[test]
    fn duhamel_rejects_bad_interval() {
        let f = random_real_field(7);
        let zero = F::zero(grid(), true);
        assert!(duhamel_step(&f, |_| zero.clone(), 1.0, 1.0, 4).is_err());
    }

    #[test]
    fn duhamel_exact_for_polynomial_forcing() {
        // With F(s) = φ(s)·h the solution is w(t) = W(t)(w0 - ∫₀^t φ) ... more
        // precisely w(t1) = W(t1)w0 - (∫φ)·W-convolved term; since W(t1-s)W(s)
        // = W(t1), forcing F(s) = φ(s)·W(s)h gives
        // w(t1) = W(t1)·(w0 - ∫₀^{t1} φ(s) ds · ∂_x h).
        let w0 = random_real_field(8);
        let h = mode(2, 1, 0.3, 0.1);
        let t1: f64 = 0.6;
        let nodes = 4; // exact for degree <= 7
        let phi = |s: f64| s * s * s;
        let int_phi = t1.powi(4) / 4.0;
        let got = duhamel_step(&w0, |s| propagate(&h, s).scaled(phi(s)), 0.0, t1, nodes).unwrap();
        let expect = propagate(&w0.sub(&partial_x(&h).scaled(int_phi)).unwrap(), t1);
        let err = got.sub(&expect).unwrap().l2_norm();
        assert!(err < 1e-13, "quadrature not exact on polynomial: {err:e}");
    }

    #[test]
    fn duhamel_self_convergence_on_oscillatory_forcing() {
        // Richardson-style oracle: errors against a much finer rule decrease
        // at (at least) the quadrature order when the node count grows.
        let w0 = random_real_field(9);
        let h = mode(2, 1, 0.5, -0.2);
        let forcing = |s: f64| propagate(&h, -s).scaled((4.0 * s).cos());
        let reference = duhamel_step(&w0, forcing, 0.0, 0.8, 48).unwrap();
        let mut errs = Vec::new();
        for nodes in [3usize, 5, 7] {
            let got = duhamel_step(&w0, forcing, 0.0, 0.8, nodes).unwrap();
            errs.push(got.sub(&reference).unwrap().l2_norm());
        }
        assert!(errs[1] < errs[0] / 4.0, "errors not decaying: {errs:?}");
        assert!(errs[2] < errs[1] / 4.0, "errors not decaying: {errs:?}");
    }
}
