use serde::{Deserialize, Serialize};

use crate::error::{check_unit_interval, Result, SimError};

fn one() -> f64 {
    1.0
}

/// Cavity-QED and atomic-control parameters of one node. Rates are in MHz,
/// durations in μs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NodeParams {
    pub kappa_mhz: f64,
    pub gamma_mhz: f64,
    pub g_mhz: f64,
    /// κ_in / κ: fraction of the cavity decay through the coupling mirror.
    pub input_coupling_fraction: f64,
    pub mode_matching: f64,
    pub pump_fidelity: f64,
    /// Population left behind by a π pulse; scaled by pulse area for others.
    pub pi_pulse_residual: f64,
    pub coherence_time_us: f64,
    pub pi_half_duration_us: f64,
    pub pi_duration_us: f64,
    #[serde(default = "one")]
    pub readout_fidelity: f64,
}

impl NodeParams {
    /// Node 1 (Bob) cavity parameters with unit coupling and matching.
    pub fn table_bob() -> Self {
        Self {
            kappa_mhz: 2.5,
            ..Self::table_alice()
        }
    }

    /// Node 2 (Alice) cavity parameters with unit coupling and matching.
    pub fn table_alice() -> Self {
        Self {
            kappa_mhz: 2.8,
            gamma_mhz: 3.0,
            g_mhz: 7.6,
            input_coupling_fraction: 1.0,
            mode_matching: 1.0,
            pump_fidelity: 0.99,
            pi_pulse_residual: 0.03,
            coherence_time_us: 400.0,
            pi_half_duration_us: 4.0,
            pi_duration_us: 8.0,
            readout_fidelity: 1.0,
        }
    }

    /// Lossless, over-coupled node with infinite cooperativity and perfect
    /// atomic control.
    pub fn ideal() -> Self {
        Self {
            kappa_mhz: 2.5,
            gamma_mhz: 0.0,
            g_mhz: 7.6,
            input_coupling_fraction: 1.0,
            mode_matching: 1.0,
            pump_fidelity: 1.0,
            pi_pulse_residual: 0.0,
            coherence_time_us: f64::INFINITY,
            pi_half_duration_us: 4.0,
            pi_duration_us: 8.0,
            readout_fidelity: 1.0,
        }
    }

    /// `C = g² / (2κγ)`.
    pub fn cooperativity(&self) -> f64 {
        self.g_mhz * self.g_mhz / (2.0 * self.kappa_mhz * self.gamma_mhz)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.kappa_mhz > 0.0) || !(self.gamma_mhz >= 0.0) || !(self.g_mhz > 0.0) {
            return Err(SimError::Config(
                "kappa and g must be positive, gamma non-negative".into(),
            ));
        }
        if !(self.input_coupling_fraction > 0.0 && self.input_coupling_fraction <= 1.0) {
            return Err(SimError::OutOfRange {
                name: "input_coupling_fraction",
                value: self.input_coupling_fraction,
                range: "(0, 1]",
            });
        }
        if !(self.mode_matching > 0.0 && self.mode_matching <= 1.0) {
            return Err(SimError::OutOfRange {
                name: "mode_matching",
                value: self.mode_matching,
                range: "(0, 1]",
            });
        }
        check_unit_interval("pump_fidelity", self.pump_fidelity)?;
        check_unit_interval("pi_pulse_residual", self.pi_pulse_residual)?;
        check_unit_interval("readout_fidelity", self.readout_fidelity)?;
        if !(self.coherence_time_us > 0.0) {
            return Err(SimError::Config("coherence_time_us must be positive".into()));
        }
        if !(self.pi_half_duration_us >= 0.0) || !(self.pi_duration_us >= 0.0) {
            return Err(SimError::Config("pulse durations must be non-negative".into()));
        }
        Ok(())
    }
}
