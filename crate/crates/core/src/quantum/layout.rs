use serde::{Deserialize, Serialize};

use crate::error::{Result, SimError};

/// One tensor factor of a composite space.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Subsystem {
    pub label: String,
    pub dim: usize,
}

/// Ordered list of labelled tensor factors. Index order is row-major with the
/// first subsystem most significant, matching the Kronecker product.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertLayout {
    subsystems: Vec<Subsystem>,
}

impl HilbertLayout {
    pub fn new<I, S>(subsystems: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, usize)>,
        S: Into<String>,
    {
        let mut out: Vec<Subsystem> = Vec::new();
        for (label, dim) in subsystems {
            let label = label.into();
            if dim == 0 {
                return Err(SimError::DimensionMismatch {
                    expected: 1,
                    found: 0,
                });
            }
            if out.iter().any(|s| s.label == label) {
                return Err(SimError::DuplicateLabel(label));
            }
            out.push(Subsystem { label, dim });
        }
        if out.is_empty() {
            return Err(SimError::EmptySelection);
        }
        Ok(Self { subsystems: out })
    }

    pub fn single(label: impl Into<String>, dim: usize) -> Result<Self> {
        Self::new([(label.into(), dim)])
    }

    pub fn qubit(label: impl Into<String>) -> Self {
        Self::single(label, 2).expect("qubit layout is always valid")
    }

    /// Total dimension (product of factor dimensions).
    pub fn dim(&self) -> usize {
        self.subsystems.iter().map(|s| s.dim).product()
    }

    pub fn len(&self) -> usize {
        self.subsystems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subsystems.is_empty()
    }

    pub fn subsystems(&self) -> &[Subsystem] {
        &self.subsystems
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.subsystems.iter().map(|s| s.label.as_str())
    }

    pub fn dims(&self) -> Vec<usize> {
        self.subsystems.iter().map(|s| s.dim).collect()
    }

    pub fn contains(&self, label: &str) -> bool {
        self.subsystems.iter().any(|s| s.label == label)
    }

    pub fn position(&self, label: &str) -> Result<usize> {
        self.subsystems
            .iter()
            .position(|s| s.label == label)
            .ok_or_else(|| SimError::UnknownLabel(label.to_string()))
    }

    pub fn dim_of(&self, label: &str) -> Result<usize> {
        Ok(self.subsystems[self.position(label)?].dim)
    }

    /// Concatenation `self ⊗ other`; labels must stay unique.
    pub fn concat(&self, other: &HilbertLayout) -> Result<Self> {
        Self::new(
            self.subsystems
                .iter()
                .chain(other.subsystems.iter())
                .map(|s| (s.label.clone(), s.dim)),
        )
    }

    /// Sub-layout with the given labels, in the order given.
    pub fn select(&self, labels: &[&str]) -> Result<Self> {
        let picked = labels
            .iter()
            .map(|l| self.dim_of(l).map(|d| (l.to_string(), d)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(picked)
    }

    pub(crate) fn split(&self, targets: &[&str]) -> Result<IndexSplit> {
        IndexSplit::new(self, targets)
    }
}

/// Bijection between a full basis index and a (target, rest) index pair.
/// Target digits follow the order of the requested labels; rest digits keep
/// layout order.
#[derive(Debug, Clone)]
pub(crate) struct IndexSplit {
    pub target_dim: usize,
    pub rest_dim: usize,
    pub target_of: Vec<usize>,
    #[allow(dead_code)]
    pub rest_of: Vec<usize>,
    full: Vec<usize>,
}

impl IndexSplit {
    fn new(layout: &HilbertLayout, targets: &[&str]) -> Result<Self> {
        if targets.is_empty() {
            return Err(SimError::EmptySelection);
        }
        let mut target_pos = Vec::with_capacity(targets.len());
        for t in targets {
            let p = layout.position(t)?;
            if target_pos.contains(&p) {
                return Err(SimError::DuplicateLabel(t.to_string()));
            }
            target_pos.push(p);
        }
        let rest_pos: Vec<usize> = (0..layout.len())
            .filter(|p| !target_pos.contains(p))
            .collect();

        let dims = layout.dims();
        let n = layout.dim();
        let mut strides = vec![1usize; dims.len()];
        for p in (0..dims.len().saturating_sub(1)).rev() {
            strides[p] = strides[p + 1] * dims[p + 1];
        }
        let target_dim: usize = target_pos.iter().map(|&p| dims[p]).product();
        let rest_dim: usize = rest_pos.iter().map(|&p| dims[p]).product();

        let mut target_of = vec![0; n];
        let mut rest_of = vec![0; n];
        let mut full = vec![0; n];
        for i in 0..n {
            let digit = |p: usize| (i / strides[p]) % dims[p];
            let t = target_pos.iter().fold(0, |acc, &p| acc * dims[p] + digit(p));
            let r = rest_pos.iter().fold(0, |acc, &p| acc * dims[p] + digit(p));
            target_of[i] = t;
            rest_of[i] = r;
            full[t * rest_dim + r] = i;
        }
        Ok(Self {
            target_dim,
            rest_dim,
            target_of,
            rest_of,
            full,
        })
    }

    #[inline]
    pub fn full(&self, target: usize, rest: usize) -> usize {
        self.full[target * self.rest_dim + rest]
    }
}
