use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::quantum::HilbertLayout;

/// Photon polarization. `R` is the circular component that couples to the
/// atom (σ+); the linear states are `A = (R + L)/√2` and `D = (L − R)/√2`,
/// so a π phase on `R` maps `A ↔ D`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Polarization {
    A,
    D,
    R,
    L,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PolBasis {
    /// mode 0 = A, mode 1 = D
    AD,
    /// mode 0 = R (coupled), mode 1 = L
    RL,
}

impl Polarization {
    pub fn basis(self) -> PolBasis {
        match self {
            Polarization::A | Polarization::D => PolBasis::AD,
            Polarization::R | Polarization::L => PolBasis::RL,
        }
    }

    /// Mode slot (0 or 1) in its own basis.
    pub fn slot(self) -> usize {
        match self {
            Polarization::A | Polarization::R => 0,
            Polarization::D | Polarization::L => 1,
        }
    }
}

/// Two Fock modes holding the orthogonal polarizations of one spatial pulse.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolarizationModePair {
    pub labels: [String; 2],
    pub cutoff: usize,
    pub basis: PolBasis,
}

impl PolarizationModePair {
    pub const DEFAULT_LABELS: [&'static str; 2] = ["photon_0", "photon_1"];

    pub fn new(cutoff: usize, basis: PolBasis) -> Self {
        Self {
            labels: Self::DEFAULT_LABELS.map(String::from),
            cutoff,
            basis,
        }
    }

    pub fn mode_dim(&self) -> usize {
        self.cutoff + 1
    }

    pub fn label_refs(&self) -> [&str; 2] {
        [self.labels[0].as_str(), self.labels[1].as_str()]
    }

    /// Label of the mode carrying `pol`, if `pol` belongs to the current basis.
    pub fn mode_for(&self, pol: Polarization) -> Option<&str> {
        (pol.basis() == self.basis).then(|| self.labels[pol.slot()].as_str())
    }

    pub fn layout(&self) -> Result<HilbertLayout> {
        HilbertLayout::new([
            (self.labels[0].clone(), self.mode_dim()),
            (self.labels[1].clone(), self.mode_dim()),
        ])
    }

    pub fn with_basis(&self, basis: PolBasis) -> Self {
        Self {
            basis,
            ..self.clone()
        }
    }
}
