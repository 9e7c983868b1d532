use serde::{Deserialize, Serialize};

use crate::cavity::{DecoherenceLaw, InputQubit, NodeParams};
use crate::error::{check_unit_interval, Result, SimError};
use crate::photonics::{DetectorParams, PhotonSource, PulseConfig};

/// Canonical parameter file shipped with the crate.
pub const DEFAULT_CONFIG_TOML: &str = include_str!("../../config/default.toml");

/// Fixed durations of the protocol steps that do not belong to a node's
/// Raman pulses. All in μs except the fiber length.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TimingConstants {
    pub pump_bob_us: f64,
    pub pump_alice_us: f64,
    pub reflection_us: f64,
    pub fiber_length_m: f64,
    pub detection_latency_us: f64,
    pub readout_us: f64,
    pub z_gate_us: f64,
}

impl Default for TimingConstants {
    fn default() -> Self {
        Self {
            pump_bob_us: 200.0,
            pump_alice_us: 240.0,
            reflection_us: 0.5,
            fiber_length_m: 60.0,
            detection_latency_us: 0.7,
            readout_us: 3.5,
            z_gate_us: 0.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProtocolFlags {
    /// Disable to inspect the uncorrected Bob states.
    pub apply_feedback: bool,
    /// Alice's analysis waits for the herald; otherwise it starts right after
    /// her reflection. Affects timing only.
    pub alice_analysis_after_herald: bool,
}

impl Default for ProtocolFlags {
    fn default() -> Self {
        Self {
            apply_feedback: true,
            alice_analysis_after_herald: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProtocolConfig {
    pub input: InputQubit,
    pub node_bob: NodeParams,
    pub node_alice: NodeParams,
    pub pulse: PulseConfig,
    pub fiber_transmission: f64,
    pub fiber_depolarization: f64,
    pub detection_path_efficiency: f64,
    pub detector: DetectorParams,
    /// Inserted at each of the three delay points.
    pub delay_tau_us: f64,
    #[serde(default)]
    pub timing: TimingConstants,
    pub repetition_rate_hz: f64,
    #[serde(default)]
    pub decoherence_law: DecoherenceLaw,
    #[serde(default)]
    pub flags: ProtocolFlags,
}

#[derive(Deserialize)]
struct ProtocolSection {
    protocol: ProtocolConfig,
}

impl ProtocolConfig {
    /// Default operating point: the `[protocol]` table of the shipped file.
    pub fn default_operating_point() -> Self {
        Self::from_toml(DEFAULT_CONFIG_TOML).expect("shipped default config parses")
    }

    /// Parses a document holding a `[protocol]` table.
    pub fn from_toml(text: &str) -> Result<Self> {
        let section: ProtocolSection = toml::from_str(text).map_err(|e| SimError::Config(e.to_string()))?;
        section.protocol.validate()?;
        Ok(section.protocol)
    }

    /// Lossless nodes, one-photon input, perfect optics and control, no
    /// decoherence.
    pub fn ideal(input: InputQubit) -> Self {
        Self {
            input,
            node_bob: NodeParams::ideal(),
            node_alice: NodeParams::ideal(),
            pulse: PulseConfig {
                source: PhotonSource::SinglePhoton,
                ..PulseConfig::default()
            },
            fiber_transmission: 1.0,
            fiber_depolarization: 0.0,
            detection_path_efficiency: 1.0,
            detector: DetectorParams::ideal(),
            delay_tau_us: 0.0,
            timing: TimingConstants::default(),
            repetition_rate_hz: 1000.0,
            decoherence_law: DecoherenceLaw::Exponential,
            flags: ProtocolFlags::default(),
        }
    }

    pub fn with_input(&self, input: InputQubit) -> Self {
        Self {
            input,
            ..self.clone()
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.input.validate()?;
        self.node_bob.validate()?;
        self.node_alice.validate()?;
        self.pulse.validate()?;
        self.detector.validate()?;
        check_unit_interval("fiber_transmission", self.fiber_transmission)?;
        check_unit_interval("fiber_depolarization", self.fiber_depolarization)?;
        check_unit_interval("detection_path_efficiency", self.detection_path_efficiency)?;
        if !(self.delay_tau_us >= 0.0 && self.delay_tau_us.is_finite()) {
            return Err(SimError::OutOfRange {
                name: "delay_tau_us",
                value: self.delay_tau_us,
                range: "[0, inf)",
            });
        }
        if !(self.repetition_rate_hz >= 0.0) {
            return Err(SimError::OutOfRange {
                name: "repetition_rate_hz",
                value: self.repetition_rate_hz,
                range: "[0, inf)",
            });
        }
        let t = &self.timing;
        let all = [
            t.pump_bob_us,
            t.pump_alice_us,
            t.reflection_us,
            t.fiber_length_m,
            t.detection_latency_us,
            t.readout_us,
            t.z_gate_us,
        ];
        if all.iter().any(|v| !(*v >= 0.0 && v.is_finite())) {
            return Err(SimError::Config("timing constants must be finite and non-negative".into()));
        }
        Ok(())
    }
}
