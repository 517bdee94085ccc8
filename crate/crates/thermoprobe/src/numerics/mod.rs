//! Shared numerical kernels: adaptive quadrature (with principal-value
//! splitting), Richardson-extrapolated finite differences, and an adaptive
//! explicit ODE stepper.

mod diff;
mod ode;
mod quadrature;

pub use diff::{differentiate, DiffSpec};
pub use ode::{ode_integrate, OdeSpec};
pub use quadrature::{integrate, QuadratureSpec};
