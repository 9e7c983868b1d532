//! Finite-dimensional quantum states on labelled composite spaces.
//!
//! All values are immutable; every operation returns a new state. Subsystems
//! are addressed by label, and the protocol keeps the global order
//! (Bob atom, Alice atom, photonic modes, ancillas).

pub mod gates;
mod layout;
mod measure;
mod noise;
mod ops;
mod state;

pub use layout::{HilbertLayout, Subsystem};
pub use measure::{computational_projectors, projective_measure};
pub use noise::{apply_noise, NoiseChannelSpec, NoiseKind};
pub use ops::{
    apply_kraus, apply_local, apply_unitary, embed_operator, fidelity_pure, measure_and_discard,
    partial_trace, tensor_product, TensorFactor,
};
pub use state::{max_abs_diff, Branch, DensityState, LinearOperator};
