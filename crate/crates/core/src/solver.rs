//! Time integration of `u_t + HΔu + u u_x = 0`.
//!
//! The linear symbol is purely imaginary and bounded on the truncated grid, so
//! the default integrator wraps classical RK4 around the exact group `W(dt)`
//! (integrating factor); only the advective CFL limits the step. The
//! nonlinearity is kept in divergence form `-(1/2)∂_x(u²)`, which leaves the
//! whole `m = 0` row of the spectrum untouched step by step, so the mean and
//! the x-average per y are conserved to the bit.

use serde::{Deserialize, Serialize};

use crate::error::{CoreError, Result};
use crate::field::SpectralField;
use crate::ops::{self, linf_norm, partial_x, partial_y, product, sobolev_norm, x_mean_residual};
use crate::propagator::propagate;
use crate::scalar::{real, Real};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Integrator {
    /// Integrating-factor RK4 around the exact `W(dt)` multiplier; 4th order.
    Ifrk4,
    /// Strang splitting `W(dt/2) ∘ N(dt) ∘ W(dt/2)`; 2nd order.
    Strang,
}

/// Time-stepping parameters.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct SolveConfig {
    pub dt: f64,
    pub horizon: f64,
    pub integrator: Integrator,
    /// 2/3-rule dealiasing of the quadratic product (default on).
    pub dealias: bool,
    /// Sobolev index tracked in the diagnostics.
    pub sobolev_index: f64,
    /// Diagnostics/snapshot stride in steps.
    pub record_stride: usize,
    /// Advective stability constant: `dt <= cfl_constant / (max|m| · |u|_∞)`.
    pub cfl_constant: f64,
    /// `L^∞` ceiling beyond which the run is declared blown up.
    pub blowup_ceiling: f64,
    /// Disables the nonlinear term (used by linear-flow probes and tests).
    pub linear_only: bool,
}

impl SolveConfig {
    pub fn new(dt: f64, horizon: f64) -> Self {
        Self {
            dt,
            horizon,
            integrator: Integrator::Ifrk4,
            dealias: true,
            sobolev_index: 2.0,
            record_stride: 1,
            cfl_constant: 0.5,
            blowup_ceiling: 1e6,
            linear_only: false,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.dt <= 0.0 || !self.dt.is_finite() {
            return Err(CoreError::InvalidConfig(format!(
                "dt = {} must be positive",
                self.dt
            )));
        }
        if self.horizon <= 0.0 || !self.horizon.is_finite() {
            return Err(CoreError::InvalidConfig(format!(
                "horizon = {} must be positive",
                self.horizon
            )));
        }
        if self.dt > self.horizon * (1.0 + 1e-12) {
            return Err(CoreError::InvalidConfig(format!(
                "dt = {} exceeds horizon = {}",
                self.dt, self.horizon
            )));
        }
        if self.record_stride == 0 {
            return Err(CoreError::InvalidConfig(
                "record_stride must be >= 1".into(),
            ));
        }
        Ok(())
    }
}

/// Diagnostics sampled along a trajectory (always reported in `f64`).
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct DiagnosticsRow {
    pub t: f64,
    pub l2: f64,
    pub hs: f64,
    pub linf: f64,
    pub grad_linf: f64,
    /// Largest `|ĝ(0,n)|` over the `m = 0` row.
    pub x_mean_residual: f64,
    /// The (real) mean mode `ĝ(0,0)`.
    pub mean: f64,
}

/// A recorded solution path: states and diagnostics at every
/// `record_stride`-th step (the initial state and the final state are always
/// included).
#[derive(Debug, Clone)]
pub struct Trajectory<T: Real> {
    pub times: Vec<f64>,
    pub states: Vec<SpectralField<T>>,
    pub diagnostics: Vec<DiagnosticsRow>,
    /// Set when the initial datum violates the zero-x-mean hypothesis; the
    /// discrete system is still well defined, so this is a warning, not an
    /// error.
    pub x_mean_warning: bool,
    pub sobolev_index: f64,
}

impl<T: Real> Trajectory<T> {
    pub fn final_state(&self) -> &SpectralField<T> {
        self.states
            .last()
            .expect("trajectory has at least the initial state")
    }

    pub fn horizon(&self) -> f64 {
        *self.times.last().expect("trajectory has at least one time")
    }
}

/// The nonlinear term `-u u_x`, computed in divergence form
/// `-(1/2) ∂_x (u²)`.
pub fn rhs_nonlinear<T: Real>(u: &SpectralField<T>, dealias: bool) -> SpectralField<T> {
    let sq = product(u, u, dealias).expect("product of a field with itself");
    partial_x(&sq).scaled(-real::<T>(0.5))
}

/// Advances the solution by one step of size `dt`.
pub fn step<T: Real>(u: &SpectralField<T>, dt: f64, cfg: &SolveConfig) -> SpectralField<T> {
    match cfg.integrator {
        Integrator::Ifrk4 => step_ifrk4(u, dt, cfg),
        Integrator::Strang => step_strang(u, dt, cfg),
    }
}

fn rhs<T: Real>(u: &SpectralField<T>, cfg: &SolveConfig) -> SpectralField<T> {
    if cfg.linear_only {
        SpectralField::zero(u.grid(), u.is_real())
    } else {
        rhs_nonlinear(u, cfg.dealias)
    }
}

fn step_ifrk4<T: Real>(u: &SpectralField<T>, dt: f64, cfg: &SolveConfig) -> SpectralField<T> {
    let half = real::<T>(dt / 2.0);
    let sixth = real::<T>(dt / 6.0);
    let third = real::<T>(dt / 3.0);

    let k1 = rhs(u, cfg);
    let a = propagate(&u.add(&k1.scaled(half)).unwrap(), dt / 2.0);
    let k2 = rhs(&a, cfg);
    let b = propagate(u, dt / 2.0).add(&k2.scaled(half)).unwrap();
    let k3 = rhs(&b, cfg);
    let c = propagate(u, dt)
        .add(&propagate(&k3, dt / 2.0).scaled(real::<T>(dt)))
        .unwrap();
    let k4 = rhs(&c, cfg);

    propagate(u, dt)
        .add(&propagate(&k1, dt).scaled(sixth))
        .unwrap()
        .add(&propagate(&k2.add(&k3).unwrap(), dt / 2.0).scaled(third))
        .unwrap()
        .add(&k4.scaled(sixth))
        .unwrap()
}

fn step_strang<T: Real>(u: &SpectralField<T>, dt: f64, cfg: &SolveConfig) -> SpectralField<T> {
    let v = propagate(u, dt / 2.0);
    let v = nonlinear_substep_rk4(&v, dt, cfg);
    propagate(&v, dt / 2.0)
}

/// Classical RK4 on `v' = -(1/2)∂_x(v²)` for the Strang nonlinear half.
fn nonlinear_substep_rk4<T: Real>(
    v: &SpectralField<T>,
    dt: f64,
    cfg: &SolveConfig,
) -> SpectralField<T> {
    let half = real::<T>(dt / 2.0);
    let k1 = rhs(v, cfg);
    let k2 = rhs(&v.add(&k1.scaled(half)).unwrap(), cfg);
    let k3 = rhs(&v.add(&k2.scaled(half)).unwrap(), cfg);
    let k4 = rhs(&v.add(&k3.scaled(real::<T>(dt))).unwrap(), cfg);
    let incr = k1
        .add(&k2.scaled(real::<T>(2.0)))
        .unwrap()
        .add(&k3.scaled(real::<T>(2.0)))
        .unwrap()
        .add(&k4)
        .unwrap();
    v.add(&incr.scaled(real::<T>(dt / 6.0))).unwrap()
}

fn diagnostics_row<T: Real>(u: &SpectralField<T>, t: f64, s: f64) -> DiagnosticsRow {
    let to = |x: T| x.to_f64().expect("scalar convertible to f64");
    DiagnosticsRow {
        t,
        l2: to(u.l2_norm()),
        hs: to(sobolev_norm(u, s)),
        linf: to(linf_norm(u)),
        grad_linf: to(linf_norm(&partial_x(u)).max(linf_norm(&partial_y(u)))),
        x_mean_residual: to(x_mean_residual(u)),
        mean: to(u.coeff(crate::grid::FrequencyIndex::new(0, 0)).re),
    }
}

/// Integrates the initial value problem up to the horizon, recording
/// diagnostics every `record_stride` steps.
///
/// Errors with [`CoreError::StabilityBound`] when the initial datum violates
/// the advective CFL bound and with [`CoreError::BlowUp`] when the solution
/// produces non-finite values or exceeds the configured `L^∞` ceiling.
pub fn solve_ivp<T: Real>(u0: &SpectralField<T>, cfg: &SolveConfig) -> Result<Trajectory<T>> {
    cfg.validate()?;
    let to = |x: T| x.to_f64().expect("scalar convertible to f64");

    let linf0 = to(linf_norm(u0));
    let max_m = (u0.grid().half_x().max(u0.grid().half_y()) - 1).max(1) as f64;
    if linf0 > 0.0 {
        let bound = cfg.cfl_constant / (max_m * linf0);
        if cfg.dt > bound {
            return Err(CoreError::StabilityBound { dt: cfg.dt, bound });
        }
    }

    let x_mean_warning = !ops::x_mean_zero(u0);
    // Land exactly on the horizon: full steps of dt plus a remainder step when
    // the horizon is not a multiple of dt.
    let n_full = (cfg.horizon / cfg.dt).floor() as usize;
    let rem = cfg.horizon - n_full as f64 * cfg.dt;
    let remainder = if rem > 1e-9 * cfg.dt { Some(rem) } else { None };

    let mut traj = Trajectory {
        times: vec![0.0],
        states: vec![u0.clone()],
        diagnostics: vec![diagnostics_row(u0, 0.0, cfg.sobolev_index)],
        x_mean_warning,
        sobolev_index: cfg.sobolev_index,
    };

    let mut u = u0.clone();
    let mut t = 0.0;
    let total = n_full + usize::from(remainder.is_some());
    for i in 0..total {
        let dt = if i < n_full {
            cfg.dt
        } else {
            remainder.unwrap()
        };
        u = step(&u, dt, cfg);
        t += dt;
        if !u.is_finite() {
            return Err(CoreError::BlowUp {
                time: t,
                reason: "non-finite coefficients".into(),
            });
        }
        let record = (i + 1) % cfg.record_stride == 0 || i + 1 == total;
        if record {
            let row = diagnostics_row(&u, t, cfg.sobolev_index);
            if row.linf > cfg.blowup_ceiling {
                return Err(CoreError::BlowUp {
                    time: t,
                    reason: format!(
                        "L^inf = {:e} exceeds ceiling {:e}",
                        row.linf, cfg.blowup_ceiling
                    ),
                });
            }
            traj.times.push(t);
            traj.states.push(u.clone());
            traj.diagnostics.push(row);
        }
    }
    Ok(traj)
}

/// The local existence time `T = (A_s ‖w₀‖_{H^s} + 1)^{-2}`.
pub fn existence_time<T: Real>(u0: &SpectralField<T>, s: f64, a_s: f64) -> f64 {
    let norm = sobolev_norm(u0, s)
        .to_f64()
        .expect("scalar convertible to f64");
    (a_s * norm + 1.0).powi(-2)
}
