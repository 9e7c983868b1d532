use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};
use rayon::prelude::*;

use super::experiments::result_row;
use super::output::{ResultRow, SweptValue};
use crate::cavity::InputQubit;
use crate::error::{Result, SimError};
use crate::protocol::{run_protocol, ProtocolConfig};
use crate::quantum::{gates, DensityState};
use crate::CMatrix;

/// Bloch vector of a qubit state.
pub fn bloch_vector(state: &DensityState) -> [f64; 3] {
    let m = state.matrix();
    [gates::pauli_x(), gates::pauli_y(), gates::pauli_z()].map(|p| (m * p).trace().re)
}

fn target_bloch(q: &InputQubit) -> [f64; 3] {
    bloch_vector(&q.density("t"))
}

/// Outcome of simulated x, y, z measurements on one state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TomographyEstimate {
    /// Linear-inversion Bloch vector, scaled into the unit ball.
    pub bloch: [f64; 3],
    /// Standard errors of the unprojected components.
    pub bloch_stderr: [f64; 3],
}

impl TomographyEstimate {
    pub fn density(&self) -> CMatrix {
        let [x, y, z] = self.bloch;
        (gates::identity() + gates::pauli_x() * crate::C64::new(x, 0.0)
            + gates::pauli_y() * crate::C64::new(y, 0.0)
            + gates::pauli_z() * crate::C64::new(z, 0.0))
            * crate::C64::new(0.5, 0.0)
    }

    pub fn fidelity_to(&self, target: [f64; 3]) -> f64 {
        0.5 * (1.0 + (0..3).map(|i| self.bloch[i] * target[i]).sum::<f64>())
    }

    pub fn fidelity_stderr(&self, target: [f64; 3]) -> f64 {
        0.5 * (0..3)
            .map(|i| (target[i] * self.bloch_stderr[i]).powi(2))
            .sum::<f64>()
            .sqrt()
    }
}

/// Samples `shots` readouts per Pauli basis with outcome misassignment
/// `1 − readout_fidelity`, corrects for it and inverts linearly. Estimates
/// outside the Bloch ball are scaled onto its surface, which is the nearest
/// valid density matrix.
pub fn sample_tomography(
    state: &DensityState,
    shots: u64,
    readout_fidelity: f64,
    rng: &mut ChaCha8Rng,
) -> Result<TomographyEstimate> {
    if shots == 0 {
        return Err(SimError::Config("shots must be positive".into()));
    }
    let contrast = 2.0 * readout_fidelity - 1.0;
    if contrast.abs() < 1e-12 {
        return Err(SimError::Config("readout carries no information".into()));
    }
    let exact = bloch_vector(state);
    let mut r = [0.0; 3];
    let mut se = [0.0; 3];
    for i in 0..3 {
        let p_up = (0.5 * (1.0 + contrast * exact[i])).clamp(0.0, 1.0);
        let k = Binomial::new(shots, p_up)
            .map_err(|e| SimError::Config(e.to_string()))?
            .sample(rng);
        let p_hat = k as f64 / shots as f64;
        r[i] = (2.0 * p_hat - 1.0) / contrast;
        se[i] = 2.0 * (p_hat * (1.0 - p_hat) / shots as f64).sqrt() / contrast.abs();
    }
    let norm = r.iter().map(|v| v * v).sum::<f64>().sqrt();
    if norm > 1.0 {
        r = r.map(|v| v / norm);
    }
    Ok(TomographyEstimate {
        bloch: r,
        bloch_stderr: se,
    })
}

/// Six-state benchmark with finite statistics on Bob's tomography. Row `i`
/// draws from its own stream of the seeded generator, so rows are
/// reproducible and independent of evaluation order.
pub fn finite_shot_tomography(config: &ProtocolConfig, shots: u64, seed: u64) -> Result<Vec<ResultRow>> {
    if shots == 0 {
        return Err(SimError::Config("shots must be positive".into()));
    }
    InputQubit::six_states()
        .par_iter()
        .enumerate()
        .map(|(i, (label, q))| {
            let cfg = config.with_input(*q);
            let result = run_protocol(&cfg)?;
            let bob = result
                .average_bob_state()
                .ok_or_else(|| SimError::InvalidState("no heralded events".into()))?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i as u64);
            let est = sample_tomography(&bob, shots, cfg.node_bob.readout_fidelity, &mut rng)?;
            let target = target_bloch(q);
            let mut row = result_row(&cfg, &result, "state", SweptValue::Label(label.to_string()))?;
            row.fidelity = est.fidelity_to(target).clamp(0.0, 1.0);
            row.stderr = Some(est.fidelity_stderr(target));
            Ok(row)
        })
        .collect()
}
