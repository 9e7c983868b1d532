use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, PI};

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use super::params::NodeParams;
use crate::constants::AMPLITUDE_NORM_TOL;
use crate::error::{check_unit_interval, Result, SimError};
use crate::quantum::{apply_local, apply_noise, gates, Branch, DensityState, HilbertLayout, NoiseChannelSpec};
use crate::{CMatrix, CVector};

/// Qubit state `α|↑z⟩ + β|↓z⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InputQubit {
    pub alpha: C64,
    pub beta: C64,
}

impl InputQubit {
    pub fn new(alpha: C64, beta: C64) -> Result<Self> {
        let q = Self { alpha, beta };
        q.validate()?;
        Ok(q)
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.alpha.norm_sqr() + self.beta.norm_sqr();
        if (n - 1.0).abs() > AMPLITUDE_NORM_TOL {
            return Err(SimError::Unnormalized(n));
        }
        Ok(())
    }

    fn real(a: f64, b: f64) -> Self {
        Self {
            alpha: C64::new(a, 0.0),
            beta: C64::new(b, 0.0),
        }
    }

    pub fn up_z() -> Self {
        Self::real(1.0, 0.0)
    }

    pub fn down_z() -> Self {
        Self::real(0.0, 1.0)
    }

    pub fn up_x() -> Self {
        Self::real(FRAC_1_SQRT_2, FRAC_1_SQRT_2)
    }

    pub fn down_x() -> Self {
        Self::real(FRAC_1_SQRT_2, -FRAC_1_SQRT_2)
    }

    pub fn up_y() -> Self {
        Self {
            alpha: C64::new(FRAC_1_SQRT_2, 0.0),
            beta: C64::new(0.0, FRAC_1_SQRT_2),
        }
    }

    pub fn down_y() -> Self {
        Self {
            alpha: C64::new(FRAC_1_SQRT_2, 0.0),
            beta: C64::new(0.0, -FRAC_1_SQRT_2),
        }
    }

    /// The six Pauli eigenstates with their labels, z then x then y.
    pub fn six_states() -> [(&'static str, Self); 6] {
        [
            ("up_z", Self::up_z()),
            ("down_z", Self::down_z()),
            ("up_x", Self::up_x()),
            ("down_x", Self::down_x()),
            ("up_y", Self::up_y()),
            ("down_y", Self::down_y()),
        ]
    }

    pub fn by_label(label: &str) -> Option<Self> {
        Self::six_states()
            .into_iter()
            .find(|(l, _)| *l == label)
            .map(|(_, q)| q)
    }

    pub fn vector(&self) -> CVector {
        CVector::from_vec(vec![self.alpha, self.beta])
    }

    /// Global phase applied to both amplitudes.
    pub fn with_phase(&self, phi: f64) -> Self {
        let e = C64::from_polar(1.0, phi);
        Self {
            alpha: self.alpha * e,
            beta: self.beta * e,
        }
    }

    pub fn density(&self, label: &str) -> DensityState {
        DensityState::from_pure(HilbertLayout::qubit(label), &self.vector())
            .expect("validated qubit amplitudes")
    }

    /// Polar angle of the Bloch vector, `2 acos|α|`.
    pub fn polar_angle(&self) -> f64 {
        2.0 * self.alpha.norm().clamp(0.0, 1.0).acos()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RotationAxis {
    X,
    Y,
    Z,
}

pub fn rotation_matrix(axis: RotationAxis, theta: f64) -> CMatrix {
    match axis {
        RotationAxis::X => gates::rx(theta),
        RotationAxis::Y => gates::ry(theta),
        RotationAxis::Z => gates::rz(theta),
    }
}

pub fn raman_rotation(state: &DensityState, atom: &str, axis: RotationAxis, theta: f64) -> Result<DensityState> {
    apply_local(state, &[atom], &rotation_matrix(axis, theta))
}

/// Optical pumping to `|↑z⟩` followed by one equatorial Raman pulse onto
/// `target`. Pumping leaves `1 − pump_fidelity` in `|↓z⟩`; the pulse fails
/// with probability `pi_pulse_residual · θ/π`, leaving the pumped state.
pub fn prepare_state(target: &InputQubit, node: &NodeParams, label: &str) -> Result<DensityState> {
    target.validate()?;
    check_unit_interval("pump_fidelity", node.pump_fidelity)?;
    check_unit_interval("pi_pulse_residual", node.pi_pulse_residual)?;
    let p = node.pump_fidelity;
    let pumped = CMatrix::from_diagonal(&CVector::from_vec(vec![C64::new(p, 0.0), C64::new(1.0 - p, 0.0)]));
    let theta = target.polar_angle();
    let rel_phase = if target.beta.norm() > 0.0 && target.alpha.norm() > 0.0 {
        target.beta.arg() - target.alpha.arg()
    } else {
        0.0
    };
    let u = gates::equatorial(theta, rel_phase + FRAC_PI_2);
    let q = (node.pi_pulse_residual * theta / PI).clamp(0.0, 1.0);
    let rotated = &u * &pumped * u.adjoint();
    let rho = rotated * C64::new(1.0 - q, 0.0) + pumped * C64::new(q, 0.0);
    DensityState::from_matrix(HilbertLayout::qubit(label), rho)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DecoherenceLaw {
    #[default]
    #[serde(alias = "exp")]
    Exponential,
    #[serde(alias = "gauss")]
    Gaussian,
}

impl DecoherenceLaw {
    /// Remaining coherence after `t` μs of exposure.
    pub fn coherence(self, t: f64, t2: f64) -> f64 {
        if t2.is_infinite() {
            return 1.0;
        }
        match self {
            DecoherenceLaw::Exponential => (-t / t2).exp(),
            DecoherenceLaw::Gaussian => (-(t / t2).powi(2)).exp(),
        }
    }
}

impl std::str::FromStr for DecoherenceLaw {
    type Err = SimError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exp" | "exponential" => Ok(Self::Exponential),
            "gauss" | "gaussian" => Ok(Self::Gaussian),
            other => Err(SimError::Config(format!("unknown decoherence law '{other}'"))),
        }
    }
}

/// Dephasing over an exposure window that starts fresh (`t = 0`).
pub fn idle_decoherence(
    state: &DensityState,
    atom: &str,
    duration: f64,
    node: &NodeParams,
    law: DecoherenceLaw,
) -> Result<DensityState> {
    dephase_window(state, atom, 0.0, duration, node, law)
}

/// Dephasing accrued between cumulative exposure times `from` and `to`:
/// coherence is scaled by `f(to)/f(from)`, so consecutive windows compose to
/// the single-window result for either law.
pub fn dephase_window(
    state: &DensityState,
    atom: &str,
    from: f64,
    to: f64,
    node: &NodeParams,
    law: DecoherenceLaw,
) -> Result<DensityState> {
    if !(from >= 0.0) || !(to >= from) {
        return Err(SimError::OutOfRange {
            name: "decoherence window",
            value: to - from,
            range: "[0, inf)",
        });
    }
    let before = law.coherence(from, node.coherence_time_us);
    let after = law.coherence(to, node.coherence_time_us);
    let ratio = if before > 0.0 { (after / before).clamp(0.0, 1.0) } else { 0.0 };
    apply_noise(state, atom, NoiseChannelSpec::dephasing(1.0 - ratio)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AtomOutcome {
    UpZ,
    DownZ,
}

impl AtomOutcome {
    pub const ALL: [AtomOutcome; 2] = [AtomOutcome::UpZ, AtomOutcome::DownZ];

    pub fn index(self) -> usize {
        match self {
            AtomOutcome::UpZ => 0,
            AtomOutcome::DownZ => 1,
        }
    }
}

/// Z-basis readout where each outcome is reported wrongly with probability
/// `1 − readout_fidelity`. Branch states keep the atom (collapsed and mixed
/// according to the misassignment) and are normalized.
pub fn atomic_readout(state: &DensityState, atom: &str, readout_fidelity: f64) -> Result<[Branch<DensityState>; 2]> {
    check_unit_interval("readout_fidelity", readout_fidelity)?;
    let proj = |i: usize| {
        let mut p = CMatrix::zeros(2, 2);
        p[(i, i)] = C64::new(1.0, 0.0);
        p
    };
    let collapsed = [apply_local(state, &[atom], &proj(0))?, apply_local(state, &[atom], &proj(1))?];
    let f = readout_fidelity;
    let mut out = [Branch::null(), Branch::null()];
    for (reported, slot) in out.iter_mut().enumerate() {
        let other = 1 - reported;
        let m = collapsed[reported].matrix() * C64::new(f, 0.0) + collapsed[other].matrix() * C64::new(1.0 - f, 0.0);
        let w = m.trace().re;
        if w > crate::constants::NULL_BRANCH_WEIGHT {
            *slot = Branch {
                weight: w,
                state: Some(state.with_matrix(m / C64::new(w, 0.0))),
            };
        } else {
            slot.weight = w.max(0.0);
        }
    }
    Ok(out)
}
