use num_complex::Complex64 as C64;

use super::layout::HilbertLayout;
use super::ops::{apply_local, TensorFactor};
use super::state::{max_abs_diff, Branch, DensityState, LinearOperator};
use crate::constants::{NULL_BRANCH_WEIGHT, PROJECTOR_TOL};
use crate::error::{Result, SimError};
use crate::CMatrix;

/// Projective measurement of the subsystems named by the projectors' layout.
///
/// Conditional states stay on the full layout and are renormalized;
/// zero-probability outcomes come back as null branches.
pub fn projective_measure(state: &DensityState, projectors: &[LinearOperator]) -> Result<Vec<Branch<DensityState>>> {
    let first = projectors
        .first()
        .ok_or_else(|| SimError::InvalidProjectors("empty projector set".into()))?;
    let measured: HilbertLayout = first.factor_layout().clone();
    let targets: Vec<&str> = measured.labels().collect();
    for t in &targets {
        if state.layout().dim_of(t)? != measured.dim_of(t)? {
            return Err(SimError::DimensionMismatch {
                expected: state.layout().dim_of(t)?,
                found: measured.dim_of(t)?,
            });
        }
    }
    let d = measured.dim();
    let mut sum = CMatrix::zeros(d, d);
    for (i, p) in projectors.iter().enumerate() {
        if p.layout() != &measured {
            return Err(SimError::InvalidProjectors(format!(
                "projector {i} acts on a different layout"
            )));
        }
        let m = p.matrix();
        if max_abs_diff(m, &m.adjoint()) > PROJECTOR_TOL {
            return Err(SimError::InvalidProjectors(format!("projector {i} is not Hermitian")));
        }
        if max_abs_diff(&(m * m), m) > PROJECTOR_TOL {
            return Err(SimError::InvalidProjectors(format!("projector {i} is not idempotent")));
        }
        sum += m;
    }
    if max_abs_diff(&sum, &CMatrix::identity(d, d)) > PROJECTOR_TOL {
        return Err(SimError::InvalidProjectors(
            "projectors do not sum to identity".into(),
        ));
    }

    projectors
        .iter()
        .map(|p| {
            let unnorm = apply_local(state, &targets, p.matrix())?;
            let weight = unnorm.trace();
            if weight <= NULL_BRANCH_WEIGHT {
                Ok(Branch {
                    weight: weight.max(0.0),
                    state: None,
                })
            } else {
                let m = unnorm.matrix() / C64::new(weight, 0.0);
                Ok(Branch {
                    weight,
                    state: Some(unnorm.with_matrix(m)),
                })
            }
        })
        .collect()
}

/// Rank-one projectors onto the computational basis of `layout`.
pub fn computational_projectors(layout: &HilbertLayout) -> Vec<LinearOperator> {
    let d = layout.dim();
    (0..d)
        .map(|k| {
            let mut m = CMatrix::zeros(d, d);
            m[(k, k)] = C64::new(1.0, 0.0);
            LinearOperator::new(layout.clone(), m).expect("square projector")
        })
        .collect()
}
