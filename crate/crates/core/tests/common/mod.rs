#![allow(dead_code)]

pub mod checks;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use teleport_core::quantum::{DensityState, HilbertLayout};
use teleport_core::{CMatrix, CVector, C64};

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn ket(amps: &[C64]) -> CVector {
    CVector::from_column_slice(amps)
}

pub fn random_vector(rng: &mut impl Rng, dim: usize) -> CVector {
    let v = CVector::from_iterator(
        dim,
        (0..dim).map(|_| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))),
    );
    let n = v.norm();
    v / c(n, 0.0)
}

/// Mixed state `G G† / Tr` from a Gaussian-free random square `G`.
pub fn random_density(rng: &mut impl Rng, layout: HilbertLayout) -> DensityState {
    let d = layout.dim();
    let g = CMatrix::from_fn(d, d, |_, _| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
    let m = &g * g.adjoint();
    let tr = m.trace();
    DensityState::from_matrix(layout, m / tr).unwrap()
}

/// Haar-ish random unitary via QR of a random complex matrix.
pub fn random_unitary(rng: &mut impl Rng, d: usize) -> CMatrix {
    let g = CMatrix::from_fn(d, d, |_, _| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
    g.qr().q()
}

pub fn max_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    assert_eq!(a.shape(), b.shape());
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

pub fn projector(v: &CVector) -> CMatrix {
    v * v.adjoint()
}

/// Random qubit amplitudes `(α, β)`.
pub fn random_qubit(rng: &mut impl Rng) -> (C64, C64) {
    let v = random_vector(rng, 2);
    (v[0], v[1])
}
