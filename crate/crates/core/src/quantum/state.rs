use nalgebra::SymmetricEigen;
use num_complex::Complex64 as C64;
use serde::Serialize;

use super::layout::HilbertLayout;
use crate::constants::{HERMITIAN_TOL, POSITIVITY_TOL, TRACE_TOL, UNITARY_TOL};
use crate::error::{Result, SimError};
use crate::{CMatrix, CVector};

/// A density matrix on an explicitly labelled composite space.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityState {
    layout: HilbertLayout,
    matrix: CMatrix,
}

impl DensityState {
    /// Checked constructor: square, Hermitian and unit trace.
    pub fn from_matrix(layout: HilbertLayout, matrix: CMatrix) -> Result<Self> {
        let state = Self::from_parts(layout, matrix)?;
        let herm = state.hermiticity_error();
        if herm > HERMITIAN_TOL {
            return Err(SimError::InvalidState(format!(
                "not Hermitian (max deviation {herm:.3e})"
            )));
        }
        let tr = state.trace();
        if (tr - 1.0).abs() > TRACE_TOL {
            return Err(SimError::InvalidState(format!("trace {tr} != 1")));
        }
        Ok(state)
    }

    /// Shape-checked constructor without physical validation; used for
    /// intermediate results of trace-preserving maps.
    pub(crate) fn from_parts(layout: HilbertLayout, matrix: CMatrix) -> Result<Self> {
        let n = layout.dim();
        if matrix.nrows() != n || matrix.ncols() != n {
            return Err(SimError::DimensionMismatch {
                expected: n,
                found: matrix.nrows(),
            });
        }
        Ok(Self { layout, matrix })
    }

    /// `|ψ⟩⟨ψ|` for a (re-normalized) state vector.
    pub fn from_pure(layout: HilbertLayout, psi: &CVector) -> Result<Self> {
        if psi.len() != layout.dim() {
            return Err(SimError::DimensionMismatch {
                expected: layout.dim(),
                found: psi.len(),
            });
        }
        let norm = psi.norm();
        if norm == 0.0 {
            return Err(SimError::Unnormalized(0.0));
        }
        let v = psi / C64::new(norm, 0.0);
        let matrix = &v * v.adjoint();
        Ok(Self { layout, matrix })
    }

    /// Computational basis projector `|index⟩⟨index|`.
    pub fn basis(layout: HilbertLayout, index: usize) -> Result<Self> {
        let n = layout.dim();
        if index >= n {
            return Err(SimError::DimensionMismatch {
                expected: n,
                found: index,
            });
        }
        let mut m = CMatrix::zeros(n, n);
        m[(index, index)] = C64::new(1.0, 0.0);
        Ok(Self { layout, matrix: m })
    }

    pub fn maximally_mixed(layout: HilbertLayout) -> Self {
        let n = layout.dim();
        let matrix = CMatrix::identity(n, n) / C64::new(n as f64, 0.0);
        Self { layout, matrix }
    }

    pub fn layout(&self) -> &HilbertLayout {
        &self.layout
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix {
        self.matrix
    }

    pub fn dim(&self) -> usize {
        self.layout.dim()
    }

    pub fn trace(&self) -> f64 {
        self.matrix.trace().re
    }

    pub fn purity(&self) -> f64 {
        (&self.matrix * &self.matrix).trace().re
    }

    pub fn hermiticity_error(&self) -> f64 {
        max_abs_diff(&self.matrix, &self.matrix.adjoint())
    }

    /// Smallest eigenvalue of the Hermitian part.
    pub fn min_eigenvalue(&self) -> f64 {
        let h = (&self.matrix + self.matrix.adjoint()) * C64::new(0.5, 0.0);
        SymmetricEigen::new(h).eigenvalues.min()
    }

    /// Full physical validation including positivity.
    pub fn validate(&self) -> Result<()> {
        let herm = self.hermiticity_error();
        if herm > HERMITIAN_TOL {
            return Err(SimError::InvalidState(format!(
                "not Hermitian (max deviation {herm:.3e})"
            )));
        }
        let tr = self.trace();
        if (tr - 1.0).abs() > TRACE_TOL {
            return Err(SimError::InvalidState(format!("trace {tr} != 1")));
        }
        let min_ev = self.min_eigenvalue();
        if min_ev < -POSITIVITY_TOL {
            return Err(SimError::InvalidState(format!(
                "negative eigenvalue {min_ev:.3e}"
            )));
        }
        Ok(())
    }

    /// Re-label the same matrix (dimensions must agree factor by factor).
    pub fn relabel(&self, layout: HilbertLayout) -> Result<Self> {
        if layout.dims() != self.layout.dims() {
            return Err(SimError::DimensionMismatch {
                expected: self.dim(),
                found: layout.dim(),
            });
        }
        Ok(Self {
            layout,
            matrix: self.matrix.clone(),
        })
    }

    pub(crate) fn with_matrix(&self, matrix: CMatrix) -> Self {
        debug_assert_eq!(matrix.nrows(), self.dim());
        Self {
            layout: self.layout.clone(),
            matrix,
        }
    }

    /// Real-valued `[re, im]` nested rows, for JSON emission.
    pub fn to_rows(&self) -> Vec<Vec<[f64; 2]>> {
        (0..self.dim())
            .map(|i| {
                (0..self.dim())
                    .map(|j| {
                        let z = self.matrix[(i, j)];
                        [z.re, z.im]
                    })
                    .collect()
            })
            .collect()
    }
}

/// A square operator on a labelled space.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearOperator {
    layout: HilbertLayout,
    matrix: CMatrix,
    unitary: bool,
}

impl LinearOperator {
    pub fn new(layout: HilbertLayout, matrix: CMatrix) -> Result<Self> {
        let n = layout.dim();
        if matrix.nrows() != n || matrix.ncols() != n {
            return Err(SimError::DimensionMismatch {
                expected: n,
                found: matrix.nrows(),
            });
        }
        Ok(Self {
            layout,
            matrix,
            unitary: false,
        })
    }

    /// Operator flagged unitary; rejected if `U†U` deviates from identity.
    pub fn unitary(layout: HilbertLayout, matrix: CMatrix) -> Result<Self> {
        let mut op = Self::new(layout, matrix)?;
        let err = op.unitarity_error();
        if err > UNITARY_TOL {
            return Err(SimError::NotUnitary(err));
        }
        op.unitary = true;
        Ok(op)
    }

    pub fn identity(layout: HilbertLayout) -> Self {
        let n = layout.dim();
        Self {
            layout,
            matrix: CMatrix::identity(n, n),
            unitary: true,
        }
    }

    pub(crate) fn from_parts_flagged(layout: HilbertLayout, matrix: CMatrix, unitary: bool) -> Self {
        Self {
            layout,
            matrix,
            unitary,
        }
    }

    pub fn layout(&self) -> &HilbertLayout {
        &self.layout
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn is_unitary(&self) -> bool {
        self.unitary
    }

    pub fn unitarity_error(&self) -> f64 {
        let n = self.matrix.nrows();
        max_abs_diff(&(self.matrix.adjoint() * &self.matrix), &CMatrix::identity(n, n))
    }

    pub fn adjoint(&self) -> Self {
        Self {
            layout: self.layout.clone(),
            matrix: self.matrix.adjoint(),
            unitary: self.unitary,
        }
    }

    /// `self · other` on the same layout.
    pub fn compose(&self, other: &LinearOperator) -> Result<Self> {
        if self.layout.dims() != other.layout.dims() {
            return Err(SimError::DimensionMismatch {
                expected: self.layout.dim(),
                found: other.layout.dim(),
            });
        }
        Ok(Self {
            layout: self.layout.clone(),
            matrix: &self.matrix * &other.matrix,
            unitary: self.unitary && other.unitary,
        })
    }

    pub fn apply_to_vector(&self, v: &CVector) -> CVector {
        &self.matrix * v
    }
}

/// Outcome of a measurement branch. Zero-weight branches carry no state.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Branch<S> {
    pub weight: f64,
    #[serde(skip)]
    pub state: Option<S>,
}

impl<S> Branch<S> {
    pub fn null() -> Self {
        Self {
            weight: 0.0,
            state: None,
        }
    }

    pub fn is_null(&self) -> bool {
        self.state.is_none()
    }
}

pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn pure_state_is_normalized_projector() {
        let psi = CVector::from_vec(vec![c(1.0, 0.0), c(0.0, 1.0)]);
        let s = DensityState::from_pure(HilbertLayout::qubit("q"), &psi).unwrap();
        assert!((s.trace() - 1.0).abs() < 1e-15);
        assert!((s.purity() - 1.0).abs() < 1e-14);
        s.validate().unwrap();
    }

    #[test]
    fn rejects_non_hermitian_matrix() {
        let m = CMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), c(0.5, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
        assert!(DensityState::from_matrix(HilbertLayout::qubit("q"), m).is_err());
    }

    #[test]
    fn rejects_negative_state_on_validate() {
        let m = CMatrix::from_row_slice(2, 2, &[c(1.5, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-0.5, 0.0)]);
        let s = DensityState::from_matrix(HilbertLayout::qubit("q"), m).unwrap();
        assert!(s.validate().is_err());
    }

    #[test]
    fn unitary_flag_is_checked() {
        let l = HilbertLayout::qubit("q");
        let bad = CMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
        assert!(matches!(
            LinearOperator::unitary(l.clone(), bad.clone()),
            Err(SimError::NotUnitary(_))
        ));
        let op = LinearOperator::new(l, bad).unwrap();
        assert!(!op.is_unitary());
    }
}
