//! Matrix representations on truncated Fock spaces.
//!
//! A mode with cutoff `N` keeps occupations `0..=N`. Two-mode matrices index
//! `|n_a, n_b⟩` as `n_a · (N + 1) + n_b`.

use nalgebra::Matrix2;
use num_complex::Complex64 as C64;

use crate::CMatrix;

pub fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Fock representation of the passive two-mode transformation that maps
/// `a_i† → Σ_j u[(j, i)] a_j†`. Exact on the subspace whose total photon
/// number does not exceed the cutoff.
pub fn two_mode_transform(u: &Matrix2<C64>, cutoff: usize) -> CMatrix {
    let d = cutoff + 1;
    let mut out = CMatrix::zeros(d * d, d * d);
    let fact: Vec<f64> = (0..=2 * cutoff).map(factorial).collect();
    for n in 0..d {
        for m in 0..d {
            let norm_in = (fact[n] * fact[m]).sqrt();
            for j in 0..=n {
                let cj = binomial(n, j) * 1.0;
                let aj = u[(0, 0)].powu(j as u32) * u[(1, 0)].powu((n - j) as u32);
                for k in 0..=m {
                    let p = j + k;
                    let q = (n - j) + (m - k);
                    if p > cutoff || q > cutoff {
                        continue;
                    }
                    let ck = binomial(m, k);
                    let ak = u[(0, 1)].powu(k as u32) * u[(1, 1)].powu((m - k) as u32);
                    let amp = aj * ak * (cj * ck * (fact[p] * fact[q]).sqrt() / norm_in);
                    out[(p * d + q, n * d + m)] += amp;
                }
            }
        }
    }
    out
}

/// Beam splitter with real amplitude transmittance `√T` and imaginary
/// reflectance `i√(1−T)`.
pub fn beam_splitter_matrix(transmittance: f64, cutoff: usize) -> CMatrix {
    let t = C64::new(transmittance.sqrt(), 0.0);
    let r = C64::new(0.0, (1.0 - transmittance).sqrt());
    two_mode_transform(&Matrix2::new(t, r, r, t), cutoff)
}

/// `exp(i φ n̂)`.
pub fn phase_matrix(phi: f64, cutoff: usize) -> CMatrix {
    CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
        cutoff + 1,
        (0..=cutoff).map(|n| C64::from_polar(1.0, phi * n as f64)),
    ))
}

pub fn number_operator(cutoff: usize) -> CMatrix {
    CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
        cutoff + 1,
        (0..=cutoff).map(|n| C64::new(n as f64, 0.0)),
    ))
}

/// Kraus operators of pure loss with intensity transmission `T`:
/// `K_k = Σ_n √C(n,k) T^{(n−k)/2} (1−T)^{k/2} |n−k⟩⟨n|`.
pub fn loss_kraus(transmission: f64, cutoff: usize) -> Vec<CMatrix> {
    let d = cutoff + 1;
    (0..d)
        .map(|k| {
            let mut m = CMatrix::zeros(d, d);
            for n in k..d {
                let amp = binomial(n, k).sqrt()
                    * transmission.powf((n - k) as f64 / 2.0)
                    * (1.0 - transmission).powf(k as f64 / 2.0);
                m[(n - k, n)] = C64::new(amp, 0.0);
            }
            m
        })
        .filter(|m| m.iter().any(|z| z.norm_sqr() > 0.0))
        .collect()
}
