//! Numerical tolerances and fixed physical constants shared across modules.

/// Maximum elementwise deviation from Hermiticity accepted for a state.
pub const HERMITIAN_TOL: f64 = 1e-10;

/// Maximum deviation of `U†U` from identity for operators flagged unitary.
pub const UNITARY_TOL: f64 = 1e-10;

/// Allowed deviation of a normalized state's trace from one.
pub const TRACE_TOL: f64 = 1e-9;

/// Smallest eigenvalue tolerated before a state is rejected as non-positive.
pub const POSITIVITY_TOL: f64 = 1e-9;

/// Idempotency / completeness tolerance for projector sets and POVMs.
pub const PROJECTOR_TOL: f64 = 1e-10;

/// Normalization tolerance for input qubit amplitudes.
pub const AMPLITUDE_NORM_TOL: f64 = 1e-12;

/// Branch weights below this are reported as null branches.
pub const NULL_BRANCH_WEIGHT: f64 = 1e-15;

/// Largest Poisson tail mass discarded by Fock truncation.
pub const FOCK_TRUNCATION_TOL: f64 = 1e-4;

/// Default Fock cutoff (occupations 0..=3 per mode).
pub const DEFAULT_FOCK_CUTOFF: usize = 3;

/// Speed of light in fiber, c / 1.5 rounded to 2×10⁸ m/s, in metres per
/// microsecond. The rounding keeps the 60 m link at 0.3 μs and 40 μs at 8 km.
pub const FIBER_LIGHT_SPEED_M_PER_US: f64 = 200.0;

/// Classical measure-and-prepare fidelity threshold.
pub const CLASSICAL_THRESHOLD: f64 = 2.0 / 3.0;

/// Largest Fock cutoff the sweeps will raise to automatically.
pub const MAX_FOCK_CUTOFF: usize = 12;
