//! Experiment drivers: the six-state benchmark, parameter sweeps, error
//! budget, rates, finite-shot tomography and the cavity coupling fit, with
//! CSV/JSON output.

mod config;
mod experiments;
mod fit;
mod output;
mod tomography;

pub use config::{ExperimentConfig, ExperimentSection};
pub use experiments::{
    adequate_pulse, error_budget, rate_estimate, result_row, six_state_benchmark, sweep, Benchmark, BudgetEntry,
    RateEstimate, StateReport, SweepParam, DELAY_SCAN_PHOTON_FACTOR, MAX_DELAY_US, MAX_MEAN_PHOTON,
};
pub use fit::{fit_couplings, fit_node_coupling, CouplingFit};
pub use output::{read_csv, rows_to_csv_string, to_json, write_csv, ResultRow, SweptValue};
pub use tomography::{bloch_vector, finite_shot_tomography, sample_tomography, TomographyEstimate};
