//! Commutator and product estimates.
//!
//! Products inside these probes are evaluated on a grid with doubled mode
//! counts, where the quadratic convolution is exact; this separates plain
//! truncation error from the inequality being measured. Both right-hand
//! sides are taken with constant 1, so the sampled ratio *is* the constant.

use shrira_core::ops::{
    bessel_potential, linf_norm, partial_x, partial_y, product_exact, sobolev_norm,
};

use crate::config::Ceilings;
use crate::report::{EstimateId, ProbeReport, ProbeSample};
use crate::{sampling, Field, LabError};
use shrira_core::grid::GridSpec;

/// `max(‖∂_x f‖_∞, ‖∂_y f‖_∞)` — the `L^∞` size of the gradient used
/// throughout the probes.
pub fn grad_linf(f: &Field) -> f64 {
    linf_norm(&partial_x(f)).max(linf_norm(&partial_y(f)))
}

/// One commutator measurement `‖[J^s, f]g‖_{L²}` against
/// `‖J^s f‖_{L²}‖g‖_∞ + (‖f‖_∞ + ‖∇f‖_∞)‖J^{s-1}g‖_{L²}`.
///
/// Returns `(lhs, rhs, ratio)`.
pub fn commutator_probe(f: &Field, g: &Field, s: f64) -> Result<(f64, f64, f64), LabError> {
    if s < 1.0 {
        return Err(LabError::Domain(format!(
            "commutator estimate needs s >= 1, got {s}"
        )));
    }
    let fg = product_exact(f, g)?;
    let js_fg = bessel_potential(&fg, s);
    let f_jsg = product_exact(f, &bessel_potential(g, s))?;
    let lhs = sobolev_norm(&js_fg.sub(&f_jsg)?, 0.0);

    let rhs = sobolev_norm(f, s) * linf_norm(g)
        + (linf_norm(f) + grad_linf(f)) * sobolev_norm(g, s - 1.0);
    let ratio = if lhs == 0.0 { 0.0 } else { lhs / rhs };
    Ok((lhs, rhs, ratio))
}

/// One product measurement `‖fg‖_{H^s}` against
/// `‖f‖_{H^s}‖g‖_∞ + ‖f‖_∞‖g‖_{H^s}`.
pub fn product_probe(f: &Field, g: &Field, s: f64) -> Result<(f64, f64, f64), LabError> {
    if s < 0.0 {
        return Err(LabError::Domain(format!(
            "product estimate needs s >= 0, got {s}"
        )));
    }
    let lhs = sobolev_norm(&product_exact(f, g)?, s);
    let rhs = sobolev_norm(f, s) * linf_norm(g) + linf_norm(f) * sobolev_norm(g, s);
    let ratio = if lhs == 0.0 { 0.0 } else { lhs / rhs };
    Ok((lhs, rhs, ratio))
}

/// Sweep settings shared by both estimates.
#[derive(Debug, Clone)]
pub struct InequalitySweepConfig {
    pub grid: GridSpec,
    pub s: f64,
    /// Spectral decay of the sampled fields.
    pub sigma: f64,
    pub samples: usize,
    pub ceilings: Ceilings,
}

impl InequalitySweepConfig {
    pub fn new(grid: GridSpec, s: f64, samples: usize) -> Self {
        Self {
            grid,
            s,
            sigma: 3.0,
            samples,
            ceilings: Ceilings::default(),
        }
    }
}

pub fn commutator_sweep(cfg: &InequalitySweepConfig, seed: u64) -> Result<ProbeReport, LabError> {
    let mut report = ProbeReport::new(EstimateId::Commutator, seed);
    for sample in 0..cfg.samples {
        let mut rng = sampling::sample_rng(seed, sample as u64);
        let f = sampling::random_field(cfg.grid, cfg.sigma, false, &mut rng);
        let g = sampling::random_field(cfg.grid, cfg.sigma, false, &mut rng);
        let (lhs, rhs, _) = commutator_probe(&f, &g, cfg.s)?;
        report
            .samples
            .push(ProbeSample::new(format!("sample={sample}"), lhs, rhs));
    }
    Ok(report.finalize(cfg.ceilings.commutator, None))
}

pub fn product_sweep(cfg: &InequalitySweepConfig, seed: u64) -> Result<ProbeReport, LabError> {
    let mut report = ProbeReport::new(EstimateId::Product, seed);
    for sample in 0..cfg.samples {
        let mut rng = sampling::sample_rng(seed, sample as u64);
        let f = sampling::random_field(cfg.grid, cfg.sigma, false, &mut rng);
        let g = sampling::random_field(cfg.grid, cfg.sigma, false, &mut rng);
        let (lhs, rhs, _) = product_probe(&f, &g, cfg.s)?;
        report
            .samples
            .push(ProbeSample::new(format!("sample={sample}"), lhs, rhs));
    }
    Ok(report.finalize(cfg.ceilings.product, None))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use num_complex::Complex;
    use shrira_core::grid::FrequencyIndex;

    fn grid() -> GridSpec {
        GridSpec::new(32, 32, 4).unwrap()
    }

    fn constant(c: f64) -> Field {
        Field::synthesize(
            &[(FrequencyIndex::new(0, 0), Complex::new(c, 0.0))],
            grid(),
            true,
        )
        .unwrap()
    }

    fn cos_x() -> Field {
        Field::synthesize(
            &[
                (FrequencyIndex::new(1, 0), Complex::new(0.5, 0.0)),
                (FrequencyIndex::new(-1, 0), Complex::new(0.5, 0.0)),
            ],
            grid(),
            true,
        )
        .unwrap()
    }

    #[test]
    fn commutator_with_constant_f_vanishes() {
        let f = constant(2.0);
        let g = sampling::random_field(grid(), 3.0, false, &mut sampling::sample_rng(1, 0));
        let (lhs, _, ratio) = commutator_probe(&f, &g, 1.5).unwrap();
        assert!(lhs < 1e-12, "lhs = {lhs:e}");
        assert!(ratio < 1e-12, "ratio = {ratio:e}");
    }

    #[test]
    fn commutator_with_constant_g_closed_form() {
        // [J^s, f]c = c(J^s f - f); for f = cos x, s = 1:
        // J¹cos x = √2 cos x, so the commutator is c(√2-1)cos x with
        // ℓ²-norm |c|(√2-1)/√2.
        let f = cos_x();
        let g = constant(1.0);
        let (lhs, _, _) = commutator_probe(&f, &g, 1.0).unwrap();
        let expect = (2f64.sqrt() - 1.0) / 2f64.sqrt();
        assert_abs_diff_eq!(lhs, expect, epsilon = 1e-12);
    }

    #[test]
    fn commutator_sweep_below_ceiling() {
        let cfg = InequalitySweepConfig::new(grid(), 1.75, 25);
        let report = commutator_sweep(&cfg, 7).unwrap();
        assert!(report.pass, "fitted = {}", report.fitted_constant);
        assert!(report.fitted_constant > 0.0);
    }

    #[test]
    fn product_with_unit_g_has_small_ratio() {
        // fg = f: lhs = ‖f‖_{H^s} while rhs adds a strictly positive second
        // term, so the ratio is strictly below 1.
        let f = sampling::random_field(grid(), 3.0, false, &mut sampling::sample_rng(2, 0));
        let g = constant(1.0);
        let (lhs, rhs, ratio) = product_probe(&f, &g, 1.25).unwrap();
        assert_abs_diff_eq!(lhs, sobolev_norm(&f, 1.25), epsilon = 1e-10);
        assert!(ratio < 1.0, "lhs = {lhs}, rhs = {rhs}");
    }

    #[test]
    fn product_cos_squared_closed_form() {
        // cos²x = 1/2 + cos(2x)/2: ℓ² norm at s = 0 is √(3/8)
        let f = cos_x();
        let (lhs, _, _) = product_probe(&f, &f, 0.0).unwrap();
        assert_abs_diff_eq!(lhs, (3f64 / 8.0).sqrt(), epsilon = 1e-12);
    }

    #[test]
    fn product_sweep_below_ceiling() {
        let cfg = InequalitySweepConfig::new(grid(), 1.0, 25);
        let report = product_sweep(&cfg, 9).unwrap();
        assert!(report.pass, "fitted = {}", report.fitted_constant);
    }

    #[test]
    fn ratios_are_scale_invariant() {
        // both sides of (4.1) and (4.2) are 1-homogeneous in each argument
        let f = sampling::random_field(grid(), 3.0, false, &mut sampling::sample_rng(3, 0));
        let g = sampling::random_field(grid(), 3.0, false, &mut sampling::sample_rng(3, 1));
        let (_, _, r1) = product_probe(&f, &g, 1.5).unwrap();
        let (_, _, r2) = product_probe(&f.scaled(17.0), &g.scaled(0.03), 1.5).unwrap();
        assert_abs_diff_eq!(r1, r2, epsilon = 1e-10);
        let (_, _, c1) = commutator_probe(&f, &g, 1.5).unwrap();
        let (_, _, c2) = commutator_probe(&f.scaled(5.0), &g.scaled(0.2), 1.5).unwrap();
        assert_abs_diff_eq!(c1, c2, epsilon = 1e-10);
    }
}
