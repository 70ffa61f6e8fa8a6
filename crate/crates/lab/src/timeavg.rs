//! Time-averaged norms of the free flow.
//!
//! The integrand `t ↦ ‖W(t)u‖_{L^∞}` oscillates at frequencies up to twice the
//! largest `m² + n²` in the field's support; under-resolving it silently
//! deflates the left-hand side of every dispersive probe. The composite
//! Gauss–Legendre rule here keeps the node spacing at most
//! `1/(spacing_factor · max phase)` and verifies itself by re-integrating with
//! doubled panel count.

use rayon::prelude::*;
use shrira_core::propagator::linf_norm_free_flow;
use shrira_core::quadrature::composite_points;

use crate::config::TimeQuadrature;
use crate::{Field, LabError};

/// Largest `m² + n²` over the support of `u` (1 for fields supported on the
/// mean mode only, so an interval always gets a finite panel count).
pub fn max_phase_speed(u: &Field) -> f64 {
    let mut max = 0i64;
    for (idx, c) in u.iter() {
        if c.norm_sqr() > 0.0 {
            max = max.max(idx.m * idx.m + idx.n * idx.n);
        }
    }
    (max as f64).max(1.0)
}

fn panel_count(interval: f64, phase: f64, q: &TimeQuadrature) -> usize {
    let spacing = 1.0 / (q.spacing_factor * phase);
    ((interval / (spacing * q.nodes_per_panel as f64)).ceil() as usize).max(2)
}

fn integral_of_linf_power(
    u: &Field,
    t0: f64,
    t1: f64,
    power: i32,
    q: &TimeQuadrature,
    panels: usize,
) -> f64 {
    let points = composite_points(t0, t1, q.nodes_per_panel, panels);
    // evaluate in parallel but reduce sequentially in node order, so the
    // result does not depend on thread scheduling
    let terms: Vec<f64> = points
        .par_iter()
        .map(|&(t, w)| {
            let v = linf_norm_free_flow(u, t, q.oversample);
            w * v.powi(power)
        })
        .collect();
    terms.iter().sum()
}

/// `‖ t ↦ ‖W(t)u‖_{L^∞} ‖_{L²([t0, t1])}` at the rule's base density.
pub fn l2t_linf_free_flow(u: &Field, t0: f64, t1: f64, q: &TimeQuadrature) -> f64 {
    let phase = max_phase_speed(u);
    let panels = panel_count(t1 - t0, phase, q);
    integral_of_linf_power(u, t0, t1, 2, q, panels)
        .max(0.0)
        .sqrt()
}

/// Like [`l2t_linf_free_flow`], but re-integrates with doubled panel count
/// and errors when the value moves by more than the self-convergence
/// tolerance. Returns the base-density value, so verified and unverified
/// samples are directly comparable.
pub fn l2t_linf_free_flow_checked(
    u: &Field,
    t0: f64,
    t1: f64,
    q: &TimeQuadrature,
) -> Result<f64, LabError> {
    let phase = max_phase_speed(u);
    let panels = panel_count(t1 - t0, phase, q);
    let base = integral_of_linf_power(u, t0, t1, 2, q, panels);
    let fine = integral_of_linf_power(u, t0, t1, 2, q, panels * 2);
    check_self_convergence(base, fine, q)?;
    Ok(base.max(0.0).sqrt())
}

/// `∫_{t0}^{t1} ‖W(t)u‖_{L^∞} dt`, with the self-convergence check.
pub fn l1t_linf_free_flow(
    u: &Field,
    t0: f64,
    t1: f64,
    q: &TimeQuadrature,
) -> Result<f64, LabError> {
    let phase = max_phase_speed(u);
    let panels = panel_count(t1 - t0, phase, q);
    let coarse = integral_of_linf_power(u, t0, t1, 1, q, panels);
    let fine = integral_of_linf_power(u, t0, t1, 1, q, panels * 2);
    check_self_convergence(coarse, fine, q)?;
    Ok(fine)
}

fn check_self_convergence(coarse: f64, fine: f64, q: &TimeQuadrature) -> Result<(), LabError> {
    let scale = fine.abs().max(1e-300);
    let dev = (coarse - fine).abs() / scale;
    if dev > q.self_convergence_tol {
        return Err(LabError::Resolution(format!(
            "doubling the panel count moved the time integral by {dev:.2e} (tolerance {:.1e})",
            q.self_convergence_tol
        )));
    }
    Ok(())
}
