//! One network node: atomic qubit control and the conditional reflection
//! channel of the atom-cavity system.

mod atom;
mod params;
mod reflection;

pub use atom::{
    atomic_readout, dephase_window, idle_decoherence, prepare_state, raman_rotation, rotation_matrix, AtomOutcome,
    DecoherenceLaw, InputQubit, RotationAxis,
};
pub use params::NodeParams;
pub use reflection::{
    cavity_reflection, conditional_loss_kraus, reflection_amplitudes, LossBudget, ReflectionAmplitudes,
};
