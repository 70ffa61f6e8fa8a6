//! Dispersive (Strichartz-type) probes for the free group.
//!
//! The local estimate bounds `‖W(·)P̃_N u₀‖_{L²(I; L^∞)}` on windows
//! `|I| = (1∨N)^{-1}` by `(1∨N)^α ‖P̃_N u₀‖_{L²}` for any `α > 1/4`; the
//! global one bounds `‖W(·)u₀‖_{L²([0,1]; L^∞)}` by `‖u₀‖_{H^s}` for
//! `s = 1/2 + α`. Both are probed on seeded Gaussian fields and reported as
//! ratios plus, for the shell scan, the effective dyadic exponent.

use shrira_core::dyadic::DyadicIndex;
use shrira_core::grid::GridSpec;
use shrira_core::ops::sobolev_norm;

use crate::config::{Ceilings, TimeQuadrature};
use crate::report::{fit_slope, EstimateId, ProbeReport, ProbeSample};
use crate::{sampling, timeavg, LabError};

/// Settings for the shell scan.
#[derive(Debug, Clone)]
pub struct LocalScanConfig {
    /// Ambient grid; its half-band must cover twice the largest shell.
    pub grid: GridSpec,
    /// Shells to scan (empty shells are skipped with a note).
    pub shells: Vec<DyadicIndex>,
    pub samples: usize,
    /// Normalization exponent for the fitted constant (the estimate holds for
    /// any value above 1/4).
    pub alpha: f64,
    pub quadrature: TimeQuadrature,
    /// How many samples per shell re-run the time quadrature at doubled panel
    /// count to enforce the self-convergence tolerance. The density is the
    /// same for every sample of a shell, so a few verified samples vouch for
    /// the rest.
    pub verified_samples_per_shell: usize,
    pub ceilings: Ceilings,
}

impl LocalScanConfig {
    /// Shells `0, 2, 4, ..., n_max` on the given grid.
    pub fn up_to(grid: GridSpec, n_max: u64, samples: usize) -> Self {
        let mut shells = vec![DyadicIndex::Zero];
        let mut n = 2u64;
        while n <= n_max {
            shells.push(DyadicIndex::from_value(n).expect("power of two"));
            n *= 2;
        }
        Self {
            grid,
            shells,
            samples,
            alpha: 0.35,
            quadrature: TimeQuadrature::default(),
            verified_samples_per_shell: 3,
            ceilings: Ceilings::default(),
        }
    }
}

/// Scans the time-localized dispersive estimate over dyadic shells.
///
/// For each shell `N` and sample, the left side is the `L²`-in-time norm of
/// `‖W(t) u₀‖_{L^∞}` over `[0, (1∨N)^{-1}]` for a random field supported on
/// the shell, and the ratio is normalized by `(1∨N)^α ‖u₀‖_{L²}`. The slope
/// fit of the per-shell worst raw ratios against `1∨N` estimates the
/// effective exponent.
///
/// Fails with a resolution error when any time quadrature misses its
/// self-convergence tolerance.
pub fn strichartz_local_probe(cfg: &LocalScanConfig, seed: u64) -> Result<ProbeReport, LabError> {
    let band = cfg.grid.half_x().min(cfg.grid.half_y()) as u64;
    let mut report = ProbeReport::new(EstimateId::StrichartzLocal, seed);
    let mut shell_maxima = Vec::new();

    for (shell_pos, &shell) in cfg.shells.iter().enumerate() {
        if 2 * shell.value() > band {
            return Err(LabError::Domain(format!(
                "shell N = {} needs grid band >= {}, have {band}",
                shell.value(),
                2 * shell.value()
            )));
        }
        let n_eff = shell.one_or_n();
        let interval = 1.0 / n_eff as f64;
        let tight = sampling::tight_grid_for_shell(shell, cfg.quadrature.oversample);

        let mut worst_ratio: f64 = 0.0;
        let mut produced = 0usize;
        for sample in 0..cfg.samples {
            let stream = (shell_pos * cfg.samples + sample) as u64;
            let mut rng = sampling::sample_rng(seed, stream);
            let u = sampling::random_shell_field(cfg.grid, shell, &mut rng);
            let l2 = u.l2_norm();
            if l2 == 0.0 {
                continue; // empty shell (N = 1)
            }
            let u = u.on_grid(tight);
            let lhs = if sample < cfg.verified_samples_per_shell {
                timeavg::l2t_linf_free_flow_checked(&u, 0.0, interval, &cfg.quadrature)?
            } else {
                timeavg::l2t_linf_free_flow(&u, 0.0, interval, &cfg.quadrature)
            };
            let raw = lhs / l2;
            worst_ratio = worst_ratio.max(raw);
            let normalizer = (n_eff as f64).powf(cfg.alpha);
            report.samples.push(ProbeSample::new(
                format!("N={} sample={sample}", shell.value()),
                lhs,
                normalizer * l2,
            ));
            produced += 1;
        }
        if produced == 0 {
            report.samples.push(ProbeSample::new(
                format!("N={} (empty shell)", shell.value()),
                0.0,
                1.0,
            ));
        } else {
            shell_maxima.push((n_eff as f64, worst_ratio));
        }
    }

    // effective exponent over the dyadic shells with at least two octaves
    if shell_maxima.len() >= 3 {
        report.slope_fit = Some(fit_slope(&shell_maxima));
    }
    Ok(report.finalize(
        cfg.ceilings.strichartz_local,
        Some(cfg.ceilings.strichartz_alpha_eff),
    ))
}

/// Settings for the global probe.
#[derive(Debug, Clone)]
pub struct GlobalProbeConfig {
    pub grid: GridSpec,
    /// Sobolev index of the right-hand side (the estimate needs `s > 3/4`).
    pub s: f64,
    /// Spectral decay of the sampled data.
    pub sigma: f64,
    pub samples: usize,
    pub quadrature: TimeQuadrature,
    pub ceilings: Ceilings,
}

impl GlobalProbeConfig {
    pub fn new(grid: GridSpec, samples: usize) -> Self {
        Self {
            grid,
            s: 0.8,
            sigma: 4.0,
            samples,
            quadrature: TimeQuadrature::default(),
            ceilings: Ceilings::default(),
        }
    }
}

/// Probes `‖W(·)u₀‖_{L²([0,1]; L^∞)} ≲ ‖u₀‖_{H^s}` on random decaying data.
pub fn strichartz_global_probe(
    cfg: &GlobalProbeConfig,
    seed: u64,
) -> Result<ProbeReport, LabError> {
    let mut report = ProbeReport::new(EstimateId::StrichartzGlobal, seed);
    for sample in 0..cfg.samples {
        let mut rng = sampling::sample_rng(seed, sample as u64);
        let u = sampling::random_field(cfg.grid, cfg.sigma, false, &mut rng);
        let lhs = if sample == 0 {
            timeavg::l2t_linf_free_flow_checked(&u, 0.0, 1.0, &cfg.quadrature)?
        } else {
            timeavg::l2t_linf_free_flow(&u, 0.0, 1.0, &cfg.quadrature)
        };
        let rhs = sobolev_norm(&u, cfg.s);
        report
            .samples
            .push(ProbeSample::new(format!("sample={sample}"), lhs, rhs));
    }
    Ok(report.finalize(cfg.ceilings.strichartz_global, None))
}
