use num_complex::Complex64 as C64;

use super::layout::{HilbertLayout, IndexSplit};
use super::state::{Branch, DensityState, LinearOperator};
use crate::constants::{AMPLITUDE_NORM_TOL, NULL_BRANCH_WEIGHT};
use crate::error::{Result, SimError};
use crate::{CMatrix, CVector};

/// Values that can be combined with a Kronecker product.
pub trait TensorFactor: Sized {
    fn factor_layout(&self) -> &HilbertLayout;
    fn factor_matrix(&self) -> &CMatrix;
    fn assemble(layout: HilbertLayout, matrix: CMatrix, factors: &[Self]) -> Self;
}

impl TensorFactor for DensityState {
    fn factor_layout(&self) -> &HilbertLayout {
        self.layout()
    }
    fn factor_matrix(&self) -> &CMatrix {
        self.matrix()
    }
    fn assemble(layout: HilbertLayout, matrix: CMatrix, _: &[Self]) -> Self {
        DensityState::from_parts(layout, matrix).expect("kronecker shape matches layout")
    }
}

impl TensorFactor for LinearOperator {
    fn factor_layout(&self) -> &HilbertLayout {
        self.layout()
    }
    fn factor_matrix(&self) -> &CMatrix {
        self.matrix()
    }
    fn assemble(layout: HilbertLayout, matrix: CMatrix, factors: &[Self]) -> Self {
        let unitary = factors.iter().all(|f| f.is_unitary());
        LinearOperator::from_parts_flagged(layout, matrix, unitary)
    }
}

/// Kronecker product in factor order; layouts are concatenated.
pub fn tensor_product<T: TensorFactor>(factors: &[T]) -> Result<T> {
    let (first, rest) = factors.split_first().ok_or(SimError::EmptySelection)?;
    let mut layout = first.factor_layout().clone();
    let mut matrix = first.factor_matrix().clone();
    for f in rest {
        layout = layout.concat(f.factor_layout())?;
        matrix = matrix.kronecker(f.factor_matrix());
    }
    Ok(T::assemble(layout, matrix, factors))
}

fn check_target_dims(op_layout: &HilbertLayout, layout: &HilbertLayout, targets: &[&str]) -> Result<()> {
    let want: Vec<usize> = targets
        .iter()
        .map(|t| layout.dim_of(t))
        .collect::<Result<_>>()?;
    if want != op_layout.dims() {
        return Err(SimError::DimensionMismatch {
            expected: want.iter().product(),
            found: op_layout.dim(),
        });
    }
    Ok(())
}

/// Full-space operator acting as `op` on `targets` (in the given order) and
/// as identity on every other subsystem.
pub fn embed_operator(op: &LinearOperator, targets: &[&str], layout: &HilbertLayout) -> Result<LinearOperator> {
    check_target_dims(op.layout(), layout, targets)?;
    let split = layout.split(targets)?;
    let n = layout.dim();
    let mut m = CMatrix::zeros(n, n);
    for r in 0..split.rest_dim {
        for tp in 0..split.target_dim {
            for t in 0..split.target_dim {
                m[(split.full(tp, r), split.full(t, r))] = op.matrix()[(tp, t)];
            }
        }
    }
    Ok(LinearOperator::from_parts_flagged(layout.clone(), m, op.is_unitary()))
}

/// `U ρ U†` for an operator on the full space.
pub fn apply_unitary(state: &DensityState, op: &LinearOperator) -> Result<DensityState> {
    if op.layout().dim() != state.dim() {
        return Err(SimError::DimensionMismatch {
            expected: state.dim(),
            found: op.layout().dim(),
        });
    }
    if !op.is_unitary() {
        return Err(SimError::NotUnitary(op.unitarity_error()));
    }
    let u = op.matrix();
    Ok(state.with_matrix(u * state.matrix() * u.adjoint()))
}

/// Reduced state on `keep`; the result keeps the original layout order.
pub fn partial_trace(state: &DensityState, keep: &[&str]) -> Result<DensityState> {
    if keep.is_empty() {
        return Err(SimError::EmptySelection);
    }
    for k in keep {
        state.layout().position(k)?;
    }
    let ordered: Vec<&str> = state
        .layout()
        .labels()
        .filter(|l| keep.contains(l))
        .collect();
    if ordered.len() == state.layout().len() {
        return Ok(state.clone());
    }
    let split = state.layout().split(&ordered)?;
    let rho = state.matrix();
    let mut out = CMatrix::zeros(split.target_dim, split.target_dim);
    for k in 0..split.target_dim {
        for kp in 0..split.target_dim {
            let mut acc = C64::new(0.0, 0.0);
            for r in 0..split.rest_dim {
                acc += rho[(split.full(k, r), split.full(kp, r))];
            }
            out[(k, kp)] = acc;
        }
    }
    DensityState::from_parts(state.layout().select(&ordered)?, out)
}

/// `⟨ψ|ρ|ψ⟩` for a normalized target vector.
pub fn fidelity_pure(state: &DensityState, target: &CVector) -> Result<f64> {
    if target.len() != state.dim() {
        return Err(SimError::DimensionMismatch {
            expected: state.dim(),
            found: target.len(),
        });
    }
    let norm2 = target.norm_squared();
    if (norm2 - 1.0).abs() > AMPLITUDE_NORM_TOL.max(1e-9) {
        return Err(SimError::Unnormalized(norm2));
    }
    let f = (target.adjoint() * state.matrix() * target)[(0, 0)].re;
    Ok(f.clamp(0.0, 1.0))
}

/// `(op ⊗ I) · m` with `op` acting on the target digits of `split`.
pub(crate) fn left_mul_local(m: &CMatrix, split: &IndexSplit, op: &CMatrix) -> CMatrix {
    let dt = split.target_dim;
    let nonzero: Vec<(usize, usize, C64)> = (0..dt)
        .flat_map(|tp| (0..dt).map(move |t| (tp, t)))
        .filter_map(|(tp, t)| {
            let v = op[(tp, t)];
            (v.norm_sqr() > 0.0).then_some((tp, t, v))
        })
        .collect();
    let mut out = CMatrix::zeros(m.nrows(), m.ncols());
    for j in 0..m.ncols() {
        for r in 0..split.rest_dim {
            for &(tp, t, v) in &nonzero {
                let src = m[(split.full(t, r), j)];
                if src.norm_sqr() > 0.0 {
                    out[(split.full(tp, r), j)] += v * src;
                }
            }
        }
    }
    out
}

/// `K ρ K†` with `K` acting locally.
pub(crate) fn sandwich_local(m: &CMatrix, split: &IndexSplit, k: &CMatrix) -> CMatrix {
    let a = left_mul_local(m, split, k);
    left_mul_local(&a.adjoint(), split, k).adjoint()
}

/// Applies a local operator `K ρ K†` on `targets` without building the full
/// embedding. No unitarity requirement.
pub fn apply_local(state: &DensityState, targets: &[&str], op: &CMatrix) -> Result<DensityState> {
    apply_kraus(state, targets, std::slice::from_ref(op))
}

/// Applies `Σ_k K_k ρ K_k†` with the Kraus operators acting on `targets`.
pub fn apply_kraus(state: &DensityState, targets: &[&str], kraus: &[CMatrix]) -> Result<DensityState> {
    let split = state.layout().split(targets)?;
    let mut acc = CMatrix::zeros(state.dim(), state.dim());
    for k in kraus {
        if k.nrows() != split.target_dim || k.ncols() != split.target_dim {
            return Err(SimError::DimensionMismatch {
                expected: split.target_dim,
                found: k.nrows(),
            });
        }
        acc += sandwich_local(state.matrix(), &split, k);
    }
    Ok(state.with_matrix(acc))
}

/// Measures `targets` with the effect `E` and discards them:
/// returns `Tr[(E ⊗ I) ρ]` and the normalized reduced state of the rest.
pub fn measure_and_discard(state: &DensityState, targets: &[&str], effect: &CMatrix) -> Result<Branch<DensityState>> {
    let split = state.layout().split(targets)?;
    if effect.nrows() != split.target_dim {
        return Err(SimError::DimensionMismatch {
            expected: split.target_dim,
            found: effect.nrows(),
        });
    }
    let rest_labels: Vec<&str> = state
        .layout()
        .labels()
        .filter(|l| !targets.contains(l))
        .collect();
    if rest_labels.is_empty() {
        return Err(SimError::EmptySelection);
    }
    let rho = state.matrix();
    let entries: Vec<(usize, usize, C64)> = (0..split.target_dim)
        .flat_map(|t| (0..split.target_dim).map(move |tp| (t, tp)))
        .filter_map(|(t, tp)| {
            let v = effect[(t, tp)];
            (v.norm_sqr() > 0.0).then_some((t, tp, v))
        })
        .collect();
    let mut out = CMatrix::zeros(split.rest_dim, split.rest_dim);
    for r in 0..split.rest_dim {
        for rp in 0..split.rest_dim {
            let mut acc = C64::new(0.0, 0.0);
            for &(t, tp, v) in &entries {
                acc += v * rho[(split.full(tp, r), split.full(t, rp))];
            }
            out[(r, rp)] = acc;
        }
    }
    let weight = out.trace().re;
    let layout = state.layout().select(&rest_labels)?;
    if weight <= NULL_BRANCH_WEIGHT {
        return Ok(Branch {
            weight: weight.max(0.0),
            state: None,
        });
    }
    let normalized = DensityState::from_parts(layout, out / C64::new(weight, 0.0))?;
    Ok(Branch {
        weight,
        state: Some(normalized),
    })
}
