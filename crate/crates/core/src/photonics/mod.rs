//! Truncated-Fock photonics: pulses, passive linear optics, loss and
//! threshold detection.

mod detector;
pub mod fock;
mod linear;
mod modes;
mod pulse;

pub use detector::{click_povm, ClickOutcome, ClickPovm, DetectorParams};
pub use linear::{
    beam_splitter, loss_channel, phase_shift, polarization_change_basis, polarization_depolarize,
    BasisChange,
};
pub use modes::{PolBasis, Polarization, PolarizationModePair};
pub use pulse::{
    coherent_pulse_state, poisson, required_cutoff, truncation_error, PhotonSource, PulseConfig,
};
