use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use super::gates;
use super::ops::apply_kraus;
use super::state::DensityState;
use crate::error::{check_unit_interval, Result, SimError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NoiseKind {
    Dephasing,
    Depolarizing,
}

/// A single-qubit noise channel with its strength in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NoiseChannelSpec {
    pub kind: NoiseKind,
    pub parameter: f64,
}

impl NoiseChannelSpec {
    pub fn new(kind: NoiseKind, parameter: f64) -> Result<Self> {
        check_unit_interval("noise parameter", parameter)?;
        Ok(Self { kind, parameter })
    }

    pub fn dephasing(parameter: f64) -> Result<Self> {
        Self::new(NoiseKind::Dephasing, parameter)
    }

    pub fn depolarizing(parameter: f64) -> Result<Self> {
        Self::new(NoiseKind::Depolarizing, parameter)
    }
}

/// Applies a qubit channel to `target`.
///
/// Dephasing scales the target's off-diagonal blocks by `1 − p`; depolarizing
/// maps the target's reduced state to `p·I/2 + (1 − p)·ρ`.
pub fn apply_noise(state: &DensityState, target: &str, spec: NoiseChannelSpec) -> Result<DensityState> {
    check_unit_interval("noise parameter", spec.parameter)?;
    let dim = state.layout().dim_of(target)?;
    if dim != 2 {
        return Err(SimError::DimensionMismatch { expected: 2, found: dim });
    }
    let p = spec.parameter;
    if p == 0.0 {
        return Ok(state.clone());
    }
    match spec.kind {
        NoiseKind::Dephasing => {
            let split = state.layout().split(&[target])?;
            let keep = C64::new(1.0 - p, 0.0);
            let mut m = state.matrix().clone();
            let n = m.nrows();
            for j in 0..n {
                for i in 0..n {
                    if split.target_of[i] != split.target_of[j] {
                        m[(i, j)] *= keep;
                    }
                }
            }
            Ok(state.with_matrix(m))
        }
        NoiseKind::Depolarizing => {
            let a = C64::new((1.0 - 0.75 * p).sqrt(), 0.0);
            let b = C64::new((p / 4.0).sqrt(), 0.0);
            let kraus = [
                gates::identity() * a,
                gates::pauli_x() * b,
                gates::pauli_y() * b,
                gates::pauli_z() * b,
            ];
            apply_kraus(state, &[target], &kraus)
        }
    }
}
