use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use super::fock::factorial;
use super::modes::{PolBasis, Polarization, PolarizationModePair};
use crate::constants::{DEFAULT_FOCK_CUTOFF, FOCK_TRUNCATION_TOL};
use crate::error::{Result, SimError};
use crate::quantum::DensityState;
use crate::CVector;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PhotonSource {
    /// Weak coherent pulse with Poissonian statistics.
    Coherent,
    /// Ideal one-photon Fock state; `mean_photon_number` is ignored.
    SinglePhoton,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PulseConfig {
    pub mean_photon_number: f64,
    pub polarization: Polarization,
    pub fock_cutoff: usize,
    /// Envelope width; metadata only (sets the default detector window).
    pub envelope_fwhm_us: f64,
    pub source: PhotonSource,
}

impl Default for PulseConfig {
    fn default() -> Self {
        Self {
            mean_photon_number: 0.07,
            polarization: Polarization::A,
            fock_cutoff: DEFAULT_FOCK_CUTOFF,
            envelope_fwhm_us: 1.0,
            source: PhotonSource::Coherent,
        }
    }
}

pub fn poisson(mean: f64, k: usize) -> f64 {
    (-mean).exp() * mean.powi(k as i32) / factorial(k)
}

/// Poisson mass above the cutoff.
pub fn truncation_error(mean: f64, cutoff: usize) -> f64 {
    let kept: f64 = (0..=cutoff).map(|k| poisson(mean, k)).sum();
    (1.0 - kept).max(0.0)
}

/// Smallest cutoff (never below the default) whose discarded tail is below
/// the truncation tolerance.
pub fn required_cutoff(mean: f64) -> usize {
    let mut n = DEFAULT_FOCK_CUTOFF;
    while truncation_error(mean, n) >= FOCK_TRUNCATION_TOL {
        n += 1;
    }
    n
}

impl PulseConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.mean_photon_number >= 0.0 && self.mean_photon_number.is_finite()) {
            return Err(SimError::OutOfRange {
                name: "mean_photon_number",
                value: self.mean_photon_number,
                range: "[0, inf)",
            });
        }
        if self.fock_cutoff < 1 {
            return Err(SimError::Config("fock_cutoff must be at least 1".into()));
        }
        if self.source == PhotonSource::Coherent
            && truncation_error(self.mean_photon_number, self.fock_cutoff) >= FOCK_TRUNCATION_TOL
        {
            return Err(SimError::CutoffTooSmall {
                cutoff: self.fock_cutoff,
                mean: self.mean_photon_number,
                required: required_cutoff(self.mean_photon_number),
            });
        }
        Ok(())
    }

    /// Copy with the cutoff raised far enough for the mean photon number.
    pub fn with_adequate_cutoff(&self) -> Self {
        let mut out = self.clone();
        if self.source == PhotonSource::Coherent {
            out.fock_cutoff = out.fock_cutoff.max(required_cutoff(self.mean_photon_number));
        }
        out
    }
}

/// Pulse state on a fresh mode pair in the basis of the configured
/// polarization; the orthogonal mode is vacuum.
pub fn coherent_pulse_state(config: &PulseConfig) -> Result<(DensityState, PolarizationModePair)> {
    config.validate()?;
    let basis: PolBasis = config.polarization.basis();
    let pair = PolarizationModePair::new(config.fock_cutoff, basis);
    let d = pair.mode_dim();
    let mut single = CVector::zeros(d);
    match config.source {
        PhotonSource::Coherent => {
            let mean = config.mean_photon_number;
            for k in 0..d {
                single[k] = C64::new(poisson(mean, k).sqrt(), 0.0);
            }
        }
        PhotonSource::SinglePhoton => single[1] = C64::new(1.0, 0.0),
    }
    let mut psi = CVector::zeros(d * d);
    for k in 0..d {
        let idx = if config.polarization.slot() == 0 { k * d } else { k };
        psi[idx] = single[k];
    }
    let state = DensityState::from_pure(pair.layout()?, &psi)?;
    Ok((state, pair))
}
