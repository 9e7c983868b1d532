//! Density-matrix simulation of quantum teleportation between two cavity-QED
//! memory nodes, using a single reflected photon (or a weak coherent pulse)
//! as the only resource.
//!
//! The crate is layered bottom-up:
//!
//! * [`quantum`]: composite Hilbert spaces, density states, operators,
//!   partial traces, measurements and qubit noise channels.
//! * [`photonics`]: truncated Fock modes, linear optics, loss and click
//!   detectors.
//! * [`cavity`]: one network node, i.e. the atomic qubit and the conditional
//!   cavity reflection.
//! * [`protocol`]: the teleportation timeline, heralding and feedback.
//! * [`harness`]: benchmark, sweeps, error budget, rates, finite-shot
//!   tomography and coupling fits, with CSV/JSON output.

// `!(x >= 0.0)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cavity;
pub mod constants;
pub mod error;
pub mod harness;
pub mod photonics;
pub mod protocol;
pub mod quantum;

pub use error::{Result, SimError};
pub use num_complex::Complex64 as C64;

/// Dense complex matrix used for every state and operator.
pub type CMatrix = nalgebra::DMatrix<C64>;
/// Dense complex column vector.
pub type CVector = nalgebra::DVector<C64>;
