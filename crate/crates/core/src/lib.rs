//! Numerical toolkit for massive single-particle state spaces described as
//! Hermitian bundles over the mass shell.
//!
//! Two descriptions of the same particle are implemented side by side: the
//! *perception* bundle, whose fibers carry the momentum-dependent metric
//! `Phi_s(p_/m)` and transform with `Phi_s(Lambda)`, and the *boosting*
//! bundle, with the flat metric and the Wigner-rotation action. The
//! intertwiner between them is `Phi_s(L(p)^{-1})` fiberwise.
//!
//! Module map:
//!
//! * [`minkowski`], [`lorentz`]: four-vectors, `SL(2,C)` and its covering map,
//!   standard boosts and Wigner rotations.
//! * [`spin_rep`]: symmetric-power representations and spin generators.
//! * [`fibers`]: fiberwise metrics, actions, the intertwiner, Pauli-Lubansky
//!   and Newton-Wigner vectors.
//! * [`wavepackets`]: quadrature on the mass shell, states, reduced matrices,
//!   entropy and concurrence.
//! * [`dirac`], [`proca`]: the bispinor and Minkowski-vector special cases.
//! * [`position_space`]: Fourier synthesis and finite-difference residuals.
//! * [`scenarios`]: named numerical experiments with CSV/JSON reports.

// `!(x > 0.0)` also rejects NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod dirac;
pub mod error;
pub mod fibers;
pub mod lorentz;
pub mod minkowski;
pub mod position_space;
pub mod proca;
pub mod sampling;
pub mod scenarios;
pub mod spin_rep;
pub mod wavepackets;

pub use error::{Error, Result};
pub use lorentz::{kappa, standard_boost, wigner_rotation, Lorentz4, PoincareElement, Shell, Sl2c};
pub use minkowski::{minkowski_dot, tilde, untilde, utilde, FourVector, Herm2, C64};
pub use spin_rep::{j_operators, phi_s, SpinMatrix, SpinVector, SpinWeight};

/// Library version embedded in scenario reports.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
