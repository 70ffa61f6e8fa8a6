//! Empirical estimate laboratory for the Shrira equation.
//!
//! Each probe measures both sides of one of the core inequalities — the
//! time-localized dispersive bound per dyadic shell, its global version, the
//! oscillatory kernel sum inside its proof, the `L¹_T L^∞` bound for
//! inhomogeneous solutions, the commutator and product estimates, the energy
//! inequality and the `g(T)` bootstrap — on seeded random inputs, and reports
//! the sampled ratios, the fitted constant and (for dyadic scans) a log-log
//! slope in a [`report::ProbeReport`].
//!
//! Probes are deterministic functions of `(seed, config)`: per-sample RNG
//! streams make the sample loops order-independent, and reductions happen in
//! sample order, so re-running a probe reproduces its report bit for bit.
//!
//! Everything here works on `f64` fields; tolerances and ceilings live in
//! [`config`].

pub mod bona_smith;
pub mod config;
pub mod energy;
pub mod inequalities;
pub mod kernel;
pub mod report;
pub mod sampling;
pub mod strichartz;
pub mod timeavg;

pub use report::{EstimateId, ProbeReport, ProbeSample, SlopeFit};

/// The field type all probes operate on.
pub type Field = shrira_core::Field64;

/// Probe-level failures.
#[derive(Debug, thiserror::Error)]
pub enum LabError {
    /// The time quadrature failed its self-convergence check; the requested
    /// resolution does not trust the measured left-hand side.
    #[error("under-resolved time quadrature: {0}")]
    Resolution(String),

    /// A probe input violates its stated domain.
    #[error("probe domain error: {0}")]
    Domain(String),

    #[error(transparent)]
    Core(#[from] shrira_core::CoreError),
}
