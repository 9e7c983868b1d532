use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::output::{ResultRow, SweptValue};
use crate::cavity::InputQubit;
use crate::constants::MAX_FOCK_CUTOFF;
use crate::error::{Result, SimError};
use crate::photonics::{required_cutoff, PhotonSource, PulseConfig};
use crate::protocol::{length_equivalent_km, run_protocol, ProtocolConfig, TeleportResult};

/// Mean photon number of the delay scan relative to the configured pulse.
pub const DELAY_SCAN_PHOTON_FACTOR: f64 = 2.0;
pub const MAX_MEAN_PHOTON: f64 = 1.5;
pub const MAX_DELAY_US: f64 = 100.0;

/// Raises the Fock cutoff as far as the pulse needs, up to the sweep limit.
pub fn adequate_pulse(pulse: &PulseConfig) -> Result<PulseConfig> {
    if pulse.source == PhotonSource::Coherent {
        let required = required_cutoff(pulse.mean_photon_number);
        if required > MAX_FOCK_CUTOFF {
            return Err(SimError::CutoffTooSmall {
                cutoff: MAX_FOCK_CUTOFF,
                mean: pulse.mean_photon_number,
                required,
            });
        }
    }
    Ok(pulse.with_adequate_cutoff())
}

fn heralded_fidelity(result: &TeleportResult) -> Result<f64> {
    result
        .fidelity()
        .ok_or_else(|| SimError::InvalidState("no heralded events".into()))
}

/// Row for one protocol run.
pub fn result_row(config: &ProtocolConfig, result: &TeleportResult, name: &str, value: SweptValue) -> Result<ResultRow> {
    let fidelity = heralded_fidelity(result)?;
    let branch: Vec<f64> = result.branch_fidelities().into_iter().flatten().collect();
    Ok(ResultRow {
        swept_name: name.to_string(),
        swept_value: value,
        fidelity,
        stderr: None,
        herald_prob: result.herald_probability,
        rate_hz: config.repetition_rate_hz * result.herald_probability,
        branch_fid_min: branch.iter().copied().fold(f64::INFINITY, f64::min).min(fidelity),
        branch_fid_max: branch.iter().copied().fold(f64::NEG_INFINITY, f64::max).max(fidelity),
        double_click_prob: result.double_click_probability,
        length_equiv_km: None,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct StateReport {
    pub label: String,
    pub fidelity: f64,
    /// Fidelity seen through Bob's imperfect readout.
    pub raw_fidelity: f64,
    pub branch_fidelities: Vec<Option<f64>>,
    /// Herald-averaged Bob state as `[re, im]` rows.
    pub bob_density: Vec<Vec<[f64; 2]>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Benchmark {
    pub rows: Vec<ResultRow>,
    pub states: Vec<StateReport>,
    pub average_fidelity: f64,
    pub average_raw_fidelity: f64,
}

/// Teleports the six Pauli eigenstates with the given configuration.
pub fn six_state_benchmark(config: &ProtocolConfig) -> Result<Benchmark> {
    let runs = InputQubit::six_states()
        .par_iter()
        .map(|(label, q)| {
            let cfg = config.with_input(*q);
            let result = run_protocol(&cfg)?;
            let row = result_row(&cfg, &result, "state", SweptValue::Label(label.to_string()))?;
            let bob = result
                .average_bob_state()
                .ok_or_else(|| SimError::InvalidState("no heralded events".into()))?;
            let report = StateReport {
                label: label.to_string(),
                fidelity: row.fidelity,
                raw_fidelity: result
                    .raw_fidelity(config.node_bob.readout_fidelity)
                    .unwrap_or(row.fidelity),
                branch_fidelities: result.branch_fidelities(),
                bob_density: bob.to_rows(),
            };
            Ok((row, report))
        })
        .collect::<Result<Vec<_>>>()?;
    let (rows, states): (Vec<_>, Vec<_>) = runs.into_iter().unzip();
    let n = states.len() as f64;
    Ok(Benchmark {
        average_fidelity: states.iter().map(|s| s.fidelity).sum::<f64>() / n,
        average_raw_fidelity: states.iter().map(|s| s.raw_fidelity).sum::<f64>() / n,
        rows,
        states,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepParam {
    MeanPhoton,
    Delay,
}

impl SweepParam {
    pub fn column_name(self) -> &'static str {
        match self {
            SweepParam::MeanPhoton => "mean_photon",
            SweepParam::Delay => "tau_us",
        }
    }
}

/// Sweeps one parameter with Alice's input fixed to `|↑x⟩`. Rows come back
/// sorted by the swept value whatever the grid order. The delay scan runs
/// with the pulse's mean photon number doubled.
pub fn sweep(config: &ProtocolConfig, param: SweepParam, grid: &[f64]) -> Result<Vec<ResultRow>> {
    if grid.is_empty() {
        return Err(SimError::Config("sweep grid is empty".into()));
    }
    let (range, max) = match param {
        SweepParam::MeanPhoton => ("(0, 1.5]", MAX_MEAN_PHOTON),
        SweepParam::Delay => ("[0, 100]", MAX_DELAY_US),
    };
    for &v in grid {
        let low_ok = match param {
            SweepParam::MeanPhoton => v > 0.0,
            SweepParam::Delay => v >= 0.0,
        };
        if !(low_ok && v <= max) {
            return Err(SimError::OutOfRange {
                name: "sweep value",
                value: v,
                range,
            });
        }
    }
    let mut sorted = grid.to_vec();
    sorted.sort_by(f64::total_cmp);
    let base = config.with_input(InputQubit::up_x());
    sorted
        .par_iter()
        .map(|&v| {
            let mut cfg = base.clone();
            match param {
                SweepParam::MeanPhoton => cfg.pulse.mean_photon_number = v,
                SweepParam::Delay => {
                    cfg.pulse.mean_photon_number *= DELAY_SCAN_PHOTON_FACTOR;
                    cfg.delay_tau_us = v;
                }
            }
            cfg.pulse = adequate_pulse(&cfg.pulse)?;
            let result = run_protocol(&cfg)?;
            let mut row = result_row(&cfg, &result, param.column_name(), SweptValue::Number(v))?;
            if param == SweepParam::Delay {
                row.length_equiv_km = Some(length_equivalent_km(v));
            }
            Ok(row)
        })
        .collect()
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BudgetEntry {
    pub label: String,
    pub baseline_fidelity: f64,
    pub idealized_fidelity: f64,
    /// Average-fidelity gain in percentage points.
    pub gain_points: f64,
}

/// Idealizes one imperfection at a time and reports the six-state average
/// fidelity gain: decoherence off, one-photon source, perfect preparation on
/// both nodes.
pub fn error_budget(config: &ProtocolConfig) -> Result<Vec<BudgetEntry>> {
    let baseline = six_state_benchmark(config)?.average_fidelity;

    let mut coherent = config.clone();
    coherent.node_bob.coherence_time_us = f64::INFINITY;
    coherent.node_alice.coherence_time_us = f64::INFINITY;

    let mut single = config.clone();
    single.pulse.source = PhotonSource::SinglePhoton;

    let mut prepared = config.clone();
    for node in [&mut prepared.node_bob, &mut prepared.node_alice] {
        node.pump_fidelity = 1.0;
        node.pi_pulse_residual = 0.0;
    }

    [("decoherence", coherent), ("photon_source", single), ("state_preparation", prepared)]
        .into_par_iter()
        .map(|(label, cfg)| {
            let idealized = six_state_benchmark(&cfg)?.average_fidelity;
            Ok(BudgetEntry {
                label: label.to_string(),
                baseline_fidelity: baseline,
                idealized_fidelity: idealized,
                gain_points: 100.0 * (idealized - baseline),
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RateEstimate {
    pub herald_probability: f64,
    pub repetition_rate_hz: f64,
    pub rate_hz: f64,
}

/// Heralded teleportations per second at the configured repetition rate.
pub fn rate_estimate(config: &ProtocolConfig) -> Result<RateEstimate> {
    let mut cfg = config.clone();
    cfg.pulse = adequate_pulse(&cfg.pulse)?;
    let p = run_protocol(&cfg)?.herald_probability;
    Ok(RateEstimate {
        herald_probability: p,
        repetition_rate_hz: config.repetition_rate_hz,
        rate_hz: config.repetition_rate_hz * p,
    })
}
