use num_complex::Complex64 as C64;
use serde::Serialize;

use super::params::NodeParams;
use crate::constants::TRACE_TOL;
use crate::error::{Result, SimError};
use crate::photonics::fock::binomial;
use crate::photonics::{polarization_change_basis, PolBasis, PolarizationModePair};
use crate::quantum::{apply_kraus, DensityState};
use crate::CMatrix;

/// Where the non-reflected flux of one scattering branch goes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LossBudget {
    /// Transmission through / scattering at the cavity mirrors.
    pub cavity_leak: f64,
    /// Spontaneous emission by the atom.
    pub atom_scattering: f64,
    /// Light outside the cavity mode.
    pub mode_mismatch: f64,
}

impl LossBudget {
    pub fn total(&self) -> f64 {
        self.cavity_leak + self.atom_scattering + self.mode_mismatch
    }
}

/// On-resonance reflection amplitudes of a one-sided cavity, including the
/// mode-matching factor.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReflectionAmplitudes {
    /// Coupled circular mode, atom in the coupled state.
    pub r_coupled: C64,
    /// Any mode the atom does not couple to.
    pub r_uncoupled: C64,
    pub loss_coupled: LossBudget,
    pub loss_uncoupled: LossBudget,
}

impl ReflectionAmplitudes {
    /// Largest deviation of `|r|² + Σ losses` from one over both branches.
    pub fn flux_error(&self) -> f64 {
        let c = self.r_coupled.norm_sqr() + self.loss_coupled.total() - 1.0;
        let u = self.r_uncoupled.norm_sqr() + self.loss_uncoupled.total() - 1.0;
        c.abs().max(u.abs())
    }

    /// Reflected fraction of a linearly polarized photon averaged over an
    /// unbiased atomic superposition: `(|r_c|² + 3|r_u|²)/4`.
    pub fn operational_reflectivity(&self) -> f64 {
        (self.r_coupled.norm_sqr() + 3.0 * self.r_uncoupled.norm_sqr()) / 4.0
    }
}

pub fn reflection_amplitudes(params: &NodeParams) -> Result<ReflectionAmplitudes> {
    params.validate()?;
    let x = params.input_coupling_fraction;
    let m = params.mode_matching;
    // s = 1/(1 + 2C); s = 0 in the lossless-atom limit.
    let s = if params.gamma_mhz == 0.0 {
        0.0
    } else {
        1.0 / (1.0 + 2.0 * params.cooperativity())
    };
    let r_c = 1.0 - 2.0 * x * s;
    let r_u = 1.0 - 2.0 * x;
    let m2 = m * m;
    let loss_coupled = LossBudget {
        cavity_leak: m2 * 4.0 * x * (1.0 - x) * s * s,
        atom_scattering: m2 * 4.0 * x * s * (1.0 - s),
        mode_mismatch: 1.0 - m2,
    };
    let loss_uncoupled = LossBudget {
        cavity_leak: m2 * 4.0 * x * (1.0 - x),
        atom_scattering: 0.0,
        mode_mismatch: 1.0 - m2,
    };
    Ok(ReflectionAmplitudes {
        r_coupled: C64::new(m * r_c, 0.0),
        r_uncoupled: C64::new(m * r_u, 0.0),
        loss_coupled,
        loss_uncoupled,
    })
}

/// Kraus operators on `(atom, mode)` for a mode whose amplitude reflection is
/// `amps[s]` when the atom is in `|s⟩` (index 0 = ↑z). Each amplitude is a
/// phase shift followed by a beam splitter onto a vacuum loss ancilla; the
/// ancilla is traced out, so `K_k` removes `k` photons:
/// `K_k |s, n⟩ = √C(n,k) a_s^{n−k} ℓ_s^k |s, n−k⟩` with
/// `ℓ_s = √(1 − |a_s|²) e^{i arg a_s}`.
pub fn conditional_loss_kraus(amps: [C64; 2], cutoff: usize) -> Result<Vec<CMatrix>> {
    for a in amps {
        if a.norm_sqr() > 1.0 + TRACE_TOL {
            return Err(SimError::OutOfRange {
                name: "reflection amplitude",
                value: a.norm(),
                range: "[0, 1]",
            });
        }
    }
    let leak: Vec<C64> = amps
        .iter()
        .map(|a| {
            let mag = (1.0 - a.norm_sqr()).max(0.0).sqrt();
            let phase = if a.norm() > 0.0 { a / a.norm() } else { C64::new(1.0, 0.0) };
            phase * mag
        })
        .collect();
    let d = cutoff + 1;
    let mut out = Vec::with_capacity(d);
    for k in 0..d {
        let mut m = CMatrix::zeros(2 * d, 2 * d);
        for (s, (&a, &l)) in amps.iter().zip(&leak).enumerate() {
            for n in k..d {
                let coef = binomial(n, k).sqrt() * a.powu((n - k) as u32) * l.powu(k as u32);
                m[(s * d + n - k, s * d + n)] = coef;
            }
        }
        out.push(m);
    }
    Ok(out)
}

/// Reflects the pulse held in `pair` off a node whose atom is `atom`.
/// The coupled circular mode (R) picks up `r_coupled` when the atom is in
/// `|↑z⟩`; every other combination sees `r_uncoupled`. Amplitudes are
/// referenced to the phase of `r_uncoupled`, which is common to all paths of
/// an n-photon pulse and hence a global phase. The returned pair keeps the
/// input basis.
pub fn cavity_reflection(
    state: &DensityState,
    node: &NodeParams,
    pair: &PolarizationModePair,
    atom: &str,
) -> Result<DensityState> {
    if state.layout().dim_of(atom)? != 2 {
        return Err(SimError::DimensionMismatch {
            expected: 2,
            found: state.layout().dim_of(atom)?,
        });
    }
    let [m0, m1] = pair.label_refs();
    for m in [m0, m1] {
        let d = state.layout().dim_of(m)?;
        if d != pair.mode_dim() {
            return Err(SimError::DimensionMismatch {
                expected: pair.mode_dim(),
                found: d,
            });
        }
    }
    let amps = reflection_amplitudes(node)?;
    let reference = if amps.r_uncoupled.norm() > 0.0 {
        amps.r_uncoupled / amps.r_uncoupled.norm()
    } else {
        C64::new(1.0, 0.0)
    };
    let rc = amps.r_coupled / reference;
    let ru = amps.r_uncoupled / reference;

    let rl = polarization_change_basis(state, pair, PolBasis::RL)?;
    let [r_mode, l_mode] = rl.pair.label_refs();
    let mut s = apply_kraus(&rl.state, &[atom, r_mode], &conditional_loss_kraus([rc, ru], pair.cutoff)?)?;
    s = apply_kraus(&s, &[atom, l_mode], &conditional_loss_kraus([ru, ru], pair.cutoff)?)?;
    Ok(polarization_change_basis(&s, &rl.pair, pair.basis)?.state)
}
