//! The teleportation protocol: configuration, timeline, feedback table and
//! the state evolution from preparation to Bob's conditional states.

mod config;
mod feedback;
mod run;
mod timeline;

pub use config::{ProtocolConfig, ProtocolFlags, TimingConstants, DEFAULT_CONFIG_TOML};
pub use feedback::{feedback_for, FeedbackGate, PhotonOutcome};
pub use run::{
    effective_pulse, entangling_stage, herald_probability, run_protocol, BranchResult, EntangledStage,
    TeleportResult, ALICE, BOB,
};
pub use timeline::{build_timeline, length_equivalent_km, Actor, Event, EventKind, ExposureWindow, Timeline};
