//! Reference tensors shipped with the crate (see `data/`).

use crate::io::TensorFile;
use crate::tensor::Tensor;

pub const DENSE_MIXED: &str = include_str!("../data/dense_mixed.tns");
pub const SPARSE_CYCLE: &str = include_str!("../data/sparse_cycle.tns");

/// Dense 3rd-order, 3-dimensional essentially nonnegative tensor with
/// diagonal (-1.51, -5.32, -0.15). Dominant eigenvalue 36.2757.
pub fn dense_mixed() -> Tensor {
    TensorFile::parse(DENSE_MIXED).expect("bundled fixture parses").tensor
}

/// Sparse 3rd-order, 3-dimensional tensor with dominant eigenvalue 1 and
/// eigenvector (1, 1, sqrt 2) / 2.
pub fn sparse_cycle() -> Tensor {
    TensorFile::parse(SPARSE_CYCLE).expect("bundled fixture parses").tensor
}
