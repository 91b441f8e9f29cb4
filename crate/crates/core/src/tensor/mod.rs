//! Dense order-`m`, dimension-`n` tensors and the operations the solvers are
//! built from.
//!
//! Entries are stored lexicographically with the first index slowest, so the
//! flat position of `(i1, ..., im)` (0-based) is `((i1 * n + i2) * n + ...) + im`.

mod contract;
mod structure;

pub use contract::{jacobian_of_tvp, power_vector, semi_symmetrize, tvp};
pub use structure::{
    alpha_shift, perturb, rank_one_start, residual_q, start_pair, weak_irreducibility_check,
};

use crate::error::{Error, Result};

/// Dense real hypermatrix with `dim^order` entries.
#[derive(Debug, Clone, PartialEq)]
pub struct Tensor {
    order: usize,
    dim: usize,
    entries: Vec<f64>,
}

impl Tensor {
    /// Builds a tensor from a flat lexicographic entry list.
    pub fn new(order: usize, dim: usize, entries: Vec<f64>) -> Result<Self> {
        let len = checked_len(order, dim)?;
        if entries.len() != len {
            return Err(Error::InvalidShape(format!(
                "order {order}, dim {dim} needs {len} entries, got {}",
                entries.len()
            )));
        }
        if let Some(pos) = entries.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite(pos));
        }
        Ok(Tensor {
            order,
            dim,
            entries,
        })
    }

    pub fn zeros(order: usize, dim: usize) -> Result<Self> {
        let len = checked_len(order, dim)?;
        Ok(Tensor {
            order,
            dim,
            entries: vec![0.0; len],
        })
    }

    /// The unit tensor: ones exactly where all indices coincide.
    pub fn unit(order: usize, dim: usize) -> Result<Self> {
        let mut t = Self::zeros(order, dim)?;
        for i in 0..dim {
            let pos = t.diagonal_position(i);
            t.entries[pos] = 1.0;
        }
        Ok(t)
    }

    /// Builds a tensor by evaluating `f` at every 0-based multi-index.
    pub fn from_fn(order: usize, dim: usize, mut f: impl FnMut(&[usize]) -> f64) -> Result<Self> {
        let mut t = Self::zeros(order, dim)?;
        let mut idx = vec![0usize; order];
        for pos in 0..t.entries.len() {
            t.entries[pos] = f(&idx);
            increment(&mut idx, dim);
        }
        if let Some(pos) = t.entries.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite(pos));
        }
        Ok(t)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<f64> {
        self.entries
    }

    /// Flat position of a 0-based multi-index.
    pub fn position(&self, index: &[usize]) -> usize {
        debug_assert_eq!(index.len(), self.order);
        index.iter().fold(0, |acc, &i| {
            debug_assert!(i < self.dim);
            acc * self.dim + i
        })
    }

    /// 0-based multi-index of a flat position.
    pub fn multi_index(&self, mut pos: usize) -> Vec<usize> {
        let mut idx = vec![0; self.order];
        for slot in idx.iter_mut().rev() {
            *slot = pos % self.dim;
            pos /= self.dim;
        }
        idx
    }

    #[inline]
    pub fn get(&self, index: &[usize]) -> f64 {
        self.entries[self.position(index)]
    }

    pub fn set(&mut self, index: &[usize], value: f64) -> Result<()> {
        if !value.is_finite() {
            return Err(Error::NonFinite(self.position(index)));
        }
        let pos = self.position(index);
        self.entries[pos] = value;
        Ok(())
    }

    /// Flat position of `(i, i, ..., i)`.
    #[inline]
    pub fn diagonal_position(&self, i: usize) -> usize {
        // (n^m - 1) / (n - 1) is the stride of the main diagonal.
        let stride: usize = (0..self.order).map(|k| self.dim.pow(k as u32)).sum();
        i * stride
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.dim)
            .map(|i| self.entries[self.diagonal_position(i)])
            .collect()
    }

    fn is_diagonal_position(&self, pos: usize) -> bool {
        let stride = self.diagonal_position(1).max(1);
        pos % stride == 0 && pos / stride < self.dim
    }

    /// First off-diagonal entry below zero, as a 0-based index.
    pub fn first_negative_off_diagonal(&self) -> Option<(Vec<usize>, f64)> {
        self.entries
            .iter()
            .enumerate()
            .find(|&(pos, &v)| v < 0.0 && !self.is_diagonal_position(pos))
            .map(|(pos, &v)| (self.multi_index(pos), v))
    }

    /// Every entry with non-identical indices is nonnegative.
    pub fn is_essentially_nonnegative(&self) -> bool {
        self.first_negative_off_diagonal().is_none()
    }

    /// Errors with the offending 1-based index if an off-diagonal entry is negative.
    pub fn check_essentially_nonnegative(&self) -> Result<()> {
        match self.first_negative_off_diagonal() {
            None => Ok(()),
            Some((idx, value)) => Err(Error::NotEssentiallyNonnegative {
                index: idx.into_iter().map(|i| i + 1).collect(),
                value,
            }),
        }
    }

    pub fn is_nonnegative(&self) -> bool {
        self.entries.iter().all(|&v| v >= 0.0)
    }

    pub fn is_positive(&self) -> bool {
        self.entries.iter().all(|&v| v > 0.0)
    }

    pub fn scaled(&self, c: f64) -> Tensor {
        Tensor {
            order: self.order,
            dim: self.dim,
            entries: self.entries.iter().map(|v| v * c).collect(),
        }
    }

    /// `self + c * I`.
    pub fn add_unit(&self, c: f64) -> Tensor {
        let mut t = self.clone();
        for i in 0..self.dim {
            let pos = t.diagonal_position(i);
            t.entries[pos] += c;
        }
        t
    }

    /// `self + c * other`.
    pub fn add_scaled(&self, c: f64, other: &Tensor) -> Result<Tensor> {
        self.check_same_shape(other)?;
        Ok(Tensor {
            order: self.order,
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + c * b)
                .collect(),
        })
    }

    pub fn max_abs_diff(&self, other: &Tensor) -> Result<f64> {
        self.check_same_shape(other)?;
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .fold(0.0_f64, |acc, (a, b)| acc.max((a - b).abs())))
    }

    fn check_same_shape(&self, other: &Tensor) -> Result<()> {
        if self.order != other.order || self.dim != other.dim {
            return Err(Error::InvalidShape(format!(
                "shape ({}, {}) does not match ({}, {})",
                self.order, self.dim, other.order, other.dim
            )));
        }
        Ok(())
    }

    pub(crate) fn check_vector(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: x.len(),
            });
        }
        Ok(())
    }
}

fn checked_len(order: usize, dim: usize) -> Result<usize> {
    if order < 2 {
        return Err(Error::InvalidShape(format!("order must be at least 2, got {order}")));
    }
    if dim < 1 {
        return Err(Error::InvalidShape("dimension must be at least 1".into()));
    }
    u32::try_from(order)
        .ok()
        .and_then(|o| dim.checked_pow(o))
        .ok_or_else(|| Error::InvalidShape(format!("{dim}^{order} entries overflow")))
}

/// Advances a 0-based multi-index in lexicographic order (last index fastest).
pub(crate) fn increment(idx: &mut [usize], dim: usize) {
    for slot in idx.iter_mut().rev() {
        *slot += 1;
        if *slot < dim {
            return;
        }
        *slot = 0;
    }
}

/// Real eigenvalue with a unit 2-norm eigenvector.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct EigenPair {
    pub lambda: f64,
    pub x: Vec<f64>,
}

impl EigenPair {
    /// Normalizes `x` to unit 2-norm.
    pub fn new(lambda: f64, x: Vec<f64>) -> Result<Self> {
        let norm = crate::linalg::norm2(&x);
        if !(norm > 0.0 && norm.is_finite()) || !lambda.is_finite() {
            return Err(Error::Domain("eigenvector must be finite and nonzero".into()));
        }
        Ok(EigenPair {
            lambda,
            x: x.into_iter().map(|v| v / norm).collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.x.len()
    }

    pub fn min_component(&self) -> f64 {
        self.x.iter().copied().fold(f64::INFINITY, f64::min)
    }
}
