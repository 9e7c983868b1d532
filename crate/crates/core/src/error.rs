use thiserror::Error;

pub type Result<T> = std::result::Result<T, SimError>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimError {
    #[error("duplicate subsystem label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown subsystem label `{0}`")]
    UnknownLabel(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("operator flagged unitary deviates from unitarity by {0:.3e}")]
    NotUnitary(f64),
    #[error("invalid projector set: {0}")]
    InvalidProjectors(String),
    #[error("`{name}` = {value} is outside {range}")]
    OutOfRange {
        name: &'static str,
        value: f64,
        range: &'static str,
    },
    #[error("target vector is not normalized (norm² = {0})")]
    Unnormalized(f64),
    #[error("fock cutoff {cutoff} too small for mean photon number {mean}; at least {required} needed")]
    CutoffTooSmall {
        cutoff: usize,
        mean: f64,
        required: usize,
    },
    #[error("empty subsystem selection")]
    EmptySelection,
    #[error("invalid state: {0}")]
    InvalidState(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl SimError {
    /// Stable machine-readable error kind.
    pub fn kind(&self) -> &'static str {
        match self {
            SimError::DuplicateLabel(_) => "duplicate_label",
            SimError::UnknownLabel(_) => "unknown_label",
            SimError::DimensionMismatch { .. } => "dimension_mismatch",
            SimError::NotUnitary(_) => "not_unitary",
            SimError::InvalidProjectors(_) => "invalid_projectors",
            SimError::OutOfRange { .. } => "out_of_range",
            SimError::Unnormalized(_) => "unnormalized",
            SimError::CutoffTooSmall { .. } => "cutoff_too_small",
            SimError::EmptySelection => "empty_selection",
            SimError::InvalidState(_) => "invalid_state",
            SimError::Config(_) => "config",
            SimError::Io(_) => "io",
        }
    }
}

impl From<std::io::Error> for SimError {
    fn from(e: std::io::Error) -> Self {
        SimError::Io(e.to_string())
    }
}

pub(crate) fn check_unit_interval(name: &'static str, value: f64) -> Result<()> {
    if (0.0..=1.0).contains(&value) {
        Ok(())
    } else {
        Err(SimError::OutOfRange {
            name,
            value,
            range: "[0, 1]",
        })
    }
}
