use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{check_unit_interval, Result, SimError};
use crate::CMatrix;

/// Threshold (click / no-click) detector pair behind a polarizing splitter.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DetectorParams {
    pub efficiency: f64,
    pub dark_count_rate_hz: f64,
    pub gate_window_us: f64,
}

impl Default for DetectorParams {
    fn default() -> Self {
        Self {
            efficiency: 0.9,
            dark_count_rate_hz: 9.0,
            gate_window_us: 3.0,
        }
    }
}

impl DetectorParams {
    pub fn ideal() -> Self {
        Self {
            efficiency: 1.0,
            dark_count_rate_hz: 0.0,
            gate_window_us: 3.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        check_unit_interval("detector efficiency", self.efficiency)?;
        if !(self.dark_count_rate_hz >= 0.0) || !(self.gate_window_us >= 0.0) {
            return Err(SimError::Config(
                "dark count rate and gate window must be non-negative".into(),
            ));
        }
        Ok(())
    }

    /// `1 − exp(−rate · window)`.
    pub fn dark_click_probability(&self) -> f64 {
        1.0 - (-self.dark_count_rate_hz * self.gate_window_us * 1e-6).exp()
    }

    /// Per-detector no-click weights `(1−η)^n (1−p_dark)` for `n = 0..=cutoff`.
    pub fn no_click_weights(&self, cutoff: usize) -> Vec<f64> {
        let keep = 1.0 - self.dark_click_probability();
        (0..=cutoff)
            .map(|n| (1.0 - self.efficiency).powi(n as i32) * keep)
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ClickOutcome {
    pub clicked_a: bool,
    pub clicked_d: bool,
}

impl ClickOutcome {
    pub const ALL: [ClickOutcome; 4] = [
        ClickOutcome { clicked_a: false, clicked_d: false },
        ClickOutcome { clicked_a: true, clicked_d: false },
        ClickOutcome { clicked_a: false, clicked_d: true },
        ClickOutcome { clicked_a: true, clicked_d: true },
    ];
}

/// The four POVM elements on an A/D mode pair, in `ClickOutcome::ALL` order.
#[derive(Debug, Clone)]
pub struct ClickPovm {
    pub cutoff: usize,
    pub elements: Vec<(ClickOutcome, CMatrix)>,
}

impl ClickPovm {
    pub fn element(&self, outcome: ClickOutcome) -> &CMatrix {
        &self
            .elements
            .iter()
            .find(|(o, _)| *o == outcome)
            .expect("all four outcomes are present")
            .1
    }
}

pub fn click_povm(params: &DetectorParams, cutoff: usize) -> Result<ClickPovm> {
    params.validate()?;
    let d = cutoff + 1;
    let no_click = params.no_click_weights(cutoff);
    let weight = |clicked: bool, n: usize| if clicked { 1.0 - no_click[n] } else { no_click[n] };
    let elements = ClickOutcome::ALL
        .iter()
        .map(|&o| {
            let mut m = CMatrix::zeros(d * d, d * d);
            for na in 0..d {
                for nd in 0..d {
                    let i = na * d + nd;
                    m[(i, i)] = C64::new(weight(o.clicked_a, na) * weight(o.clicked_d, nd), 0.0);
                }
            }
            (o, m)
        })
        .collect();
    Ok(ClickPovm { cutoff, elements })
}
