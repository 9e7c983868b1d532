use serde::{Deserialize, Serialize};

use crate::cavity::{rotation_matrix, AtomOutcome, RotationAxis};
use crate::quantum::gates;
use crate::CMatrix;

/// Polarization registered by the single clicking detector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PhotonOutcome {
    A,
    D,
}

impl PhotonOutcome {
    pub const ALL: [PhotonOutcome; 2] = [PhotonOutcome::A, PhotonOutcome::D];
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FeedbackGate {
    /// π rotation about x: swaps the z basis states without relative phase.
    RxPi,
    /// Phase gate `diag(1, −1)`.
    Z,
}

impl FeedbackGate {
    pub fn matrix(self) -> CMatrix {
        match self {
            FeedbackGate::RxPi => rotation_matrix(RotationAxis::X, std::f64::consts::PI),
            FeedbackGate::Z => gates::pauli_z(),
        }
    }
}

/// Gates applied to Bob, in order: the polarization correction first, then
/// the one conditioned on Alice's readout.
pub fn feedback_for(photon: PhotonOutcome, alice: AtomOutcome) -> Vec<FeedbackGate> {
    let mut out = Vec::with_capacity(2);
    if photon == PhotonOutcome::D {
        out.push(FeedbackGate::RxPi);
    }
    if alice == AtomOutcome::UpZ {
        out.push(FeedbackGate::Z);
    }
    out
}
