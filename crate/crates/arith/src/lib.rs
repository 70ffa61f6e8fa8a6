//! Number-theoretic subroutines for the dispersive kernel bounds: Dirichlet
//! rational approximation, quadratic Weyl exponential sums with their
//! inequality, and a Poisson-summation sanity check.

pub mod poisson;
pub mod rational;
pub mod weyl;

pub use poisson::{poisson_check, PoissonCheck, PoissonFamily};
pub use rational::{dirichlet_approx, RationalApprox};
pub use weyl::{weyl_bound_rhs, weyl_sum, RealQuadratic, WeylError};
