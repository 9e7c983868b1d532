//! Fixed single-qubit matrices. Basis order is (|↑z⟩, |↓z⟩).

use num_complex::Complex64 as C64;

use crate::CMatrix;

fn m2(a: C64, b: C64, c: C64, d: C64) -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[a, b, c, d])
}

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);
const I: C64 = C64::new(0.0, 1.0);

pub fn identity() -> CMatrix {
    CMatrix::identity(2, 2)
}

pub fn pauli_x() -> CMatrix {
    m2(ZERO, ONE, ONE, ZERO)
}

pub fn pauli_y() -> CMatrix {
    m2(ZERO, -I, I, ZERO)
}

pub fn pauli_z() -> CMatrix {
    m2(ONE, ZERO, ZERO, -ONE)
}

/// `R_x(θ) = [[cos θ/2, −i sin θ/2], [−i sin θ/2, cos θ/2]]`.
pub fn rx(theta: f64) -> CMatrix {
    let (s, c) = (theta / 2.0).sin_cos();
    m2(C64::new(c, 0.0), C64::new(0.0, -s), C64::new(0.0, -s), C64::new(c, 0.0))
}

/// `R_y(θ) = [[cos θ/2, −sin θ/2], [sin θ/2, cos θ/2]]`.
pub fn ry(theta: f64) -> CMatrix {
    let (s, c) = (theta / 2.0).sin_cos();
    m2(C64::new(c, 0.0), C64::new(-s, 0.0), C64::new(s, 0.0), C64::new(c, 0.0))
}

/// `R_z(θ) = diag(e^{−iθ/2}, e^{iθ/2})`.
pub fn rz(theta: f64) -> CMatrix {
    m2(
        C64::from_polar(1.0, -theta / 2.0),
        ZERO,
        ZERO,
        C64::from_polar(1.0, theta / 2.0),
    )
}

/// Rotation by `theta` about the equatorial axis at azimuth `phase`
/// (`phase = 0` is x, `phase = π/2` is y).
pub fn equatorial(theta: f64, phase: f64) -> CMatrix {
    let (s, c) = (theta / 2.0).sin_cos();
    let e = C64::from_polar(1.0, phase);
    let minus_i = C64::new(0.0, -1.0);
    m2(
        C64::new(c, 0.0),
        minus_i * s * e.conj(),
        minus_i * s * e,
        C64::new(c, 0.0),
    )
}
