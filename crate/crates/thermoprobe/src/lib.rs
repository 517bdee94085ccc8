//! Quantum thermometry with a uniformly moving two-level probe.
//!
//! A two-level system rides an inertial trajectory with rapidity `u` through
//! a thermal massless scalar field and is read out after a proper time `tau`.
//! This crate computes everything that pipeline needs, end to end:
//!
//! - [`rates`]: vacuum decay rate, effective thermal occupation N and its
//!   temperature derivative, and Lamb shifts, for linear (UDW) and
//!   time-derivative (TD) couplings at any rapidity;
//! - [`dynamics`]: the closed-form reduced density matrix of the probe, its
//!   Bloch vector and steady state, plus a master-equation ODE oracle used to
//!   validate the closed form;
//! - [`estimation`]: symmetric logarithmic derivatives, quantum Fisher
//!   information through three independent routes, classical Fisher
//!   information of projective readouts, and the two-parameter (T, theta)
//!   Fisher matrix with its compatibility and simultaneous-vs-individual
//!   figures of merit;
//! - [`scan`]: a deterministic parameter-sweep engine with golden-section
//!   argmax refinement, named figure presets, and a long-time plateau
//!   (trapping) detector;
//! - [`numerics`]: the adaptive quadrature / differentiation / ODE kernels
//!   behind all of the above;
//! - [`cli`]: the command-line front end wrapping everything in CSV tables.
//!
//! All quantities are in scaled units with `c = hbar = k_B = 1`.
//!
//! Run `cargo run --example qfi_routes` (or any other example) for a guided
//! tour; `cargo run -- selftest` executes the full acceptance suite.

// validation uses `!(x > 0.0)` on purpose: unlike `x <= 0.0` it also
// rejects NaN inputs
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod dynamics;
pub mod error;
pub mod estimation;
pub mod mat2;
pub mod numerics;
pub mod rates;
pub mod scan;
pub mod selftest;

pub use error::{Error, Result};
