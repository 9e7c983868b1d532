use nalgebra::Matrix2;
use num_complex::Complex64 as C64;

use super::fock::{beam_splitter_matrix, loss_kraus, phase_matrix, two_mode_transform};
use super::modes::{PolBasis, PolarizationModePair};
use crate::error::{check_unit_interval, Result, SimError};
use crate::quantum::{apply_kraus, apply_local, DensityState};
use crate::CMatrix;

fn mode_cutoff(state: &DensityState, mode: &str) -> Result<usize> {
    Ok(state.layout().dim_of(mode)? - 1)
}

fn equal_cutoffs(state: &DensityState, a: &str, b: &str) -> Result<usize> {
    let (ca, cb) = (mode_cutoff(state, a)?, mode_cutoff(state, b)?);
    if ca != cb {
        return Err(SimError::DimensionMismatch {
            expected: ca + 1,
            found: cb + 1,
        });
    }
    Ok(ca)
}

/// Two-mode beam splitter with amplitude transmittance `√T` (real) and
/// reflectance `i√(1−T)`.
pub fn beam_splitter(state: &DensityState, mode_a: &str, mode_b: &str, transmittance: f64) -> Result<DensityState> {
    check_unit_interval("transmittance", transmittance)?;
    let cutoff = equal_cutoffs(state, mode_a, mode_b)?;
    apply_local(state, &[mode_a, mode_b], &beam_splitter_matrix(transmittance, cutoff))
}

/// `exp(i φ n̂)` on one mode.
pub fn phase_shift(state: &DensityState, mode: &str, phi: f64) -> Result<DensityState> {
    let cutoff = mode_cutoff(state, mode)?;
    apply_local(state, &[mode], &phase_matrix(phi, cutoff))
}

/// Pure loss: beam splitting against vacuum with the given transmission and
/// discarding the ancilla, applied in Kraus form.
pub fn loss_channel(state: &DensityState, mode: &str, transmission: f64) -> Result<DensityState> {
    check_unit_interval("transmission", transmission)?;
    if transmission == 1.0 {
        return Ok(state.clone());
    }
    let cutoff = mode_cutoff(state, mode)?;
    apply_kraus(state, &[mode], &loss_kraus(transmission, cutoff))
}

/// Mode transformation taking `from`-basis amplitudes to `to`-basis ones.
fn basis_unitary(from: PolBasis, to: PolBasis) -> Matrix2<C64> {
    let h = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    // a_A† = (a_R† + a_L†)/√2, a_D† = (−a_R† + a_L†)/√2
    let ad_to_rl = Matrix2::new(h, -h, h, h);
    match (from, to) {
        (PolBasis::AD, PolBasis::RL) => ad_to_rl,
        (PolBasis::RL, PolBasis::AD) => ad_to_rl.adjoint(),
        _ => Matrix2::identity(),
    }
}

#[derive(Debug, Clone)]
pub struct BasisChange {
    pub state: DensityState,
    pub pair: PolarizationModePair,
    /// Set when the requested basis was already the current one.
    pub noop: bool,
}

/// Rewrites the pair's two modes in the other polarization basis.
pub fn polarization_change_basis(state: &DensityState, pair: &PolarizationModePair, to: PolBasis) -> Result<BasisChange> {
    if pair.basis == to {
        return Ok(BasisChange {
            state: state.clone(),
            pair: pair.clone(),
            noop: true,
        });
    }
    let [a, b] = pair.label_refs();
    let cutoff = equal_cutoffs(state, a, b)?;
    let u = two_mode_transform(&basis_unitary(pair.basis, to), cutoff);
    Ok(BasisChange {
        state: apply_local(state, &[a, b], &u)?,
        pair: pair.with_basis(to),
        noop: false,
    })
}

/// Polarization depolarization: with probability `p` a uniformly random
/// polarization Pauli is applied to the pulse. On a single photon this is
/// `p·I/2 + (1 − p)·ρ` on the polarization qubit.
pub fn polarization_depolarize(state: &DensityState, pair: &PolarizationModePair, p: f64) -> Result<DensityState> {
    check_unit_interval("polarization depolarization", p)?;
    if p == 0.0 {
        return Ok(state.clone());
    }
    let [a, b] = pair.label_refs();
    let cutoff = equal_cutoffs(state, a, b)?;
    let zero = C64::new(0.0, 0.0);
    let one = C64::new(1.0, 0.0);
    let i = C64::new(0.0, 1.0);
    let paulis = [
        Matrix2::new(zero, one, one, zero),
        Matrix2::new(zero, -i, i, zero),
        Matrix2::new(one, zero, zero, -one),
    ];
    let d = (cutoff + 1) * (cutoff + 1);
    let mut kraus: Vec<CMatrix> = vec![CMatrix::identity(d, d) * C64::new((1.0 - 0.75 * p).sqrt(), 0.0)];
    kraus.extend(
        paulis
            .iter()
            .map(|u| two_mode_transform(u, cutoff) * C64::new((p / 4.0).sqrt(), 0.0)),
    );
    apply_kraus(state, &[a, b], &kraus)
}
