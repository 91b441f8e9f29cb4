//! Seeded random essentially nonnegative tensors.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::tensor::Tensor;

/// Name recorded alongside generated instances.
pub const GENERATOR: &str = "uniform-chacha8";

/// Description of one generated instance; enough to regenerate it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct InstanceSpec {
    pub m: usize,
    pub n: usize,
    pub d: u32,
    pub seed: u64,
}

impl InstanceSpec {
    pub fn generate(&self) -> Result<Tensor> {
        random_essentially_nonnegative(self.m, self.n, self.d, self.seed)
    }
}

/// Diagonal entries uniform in `[-1, 0]`, off-diagonal entries uniform in
/// `[0, 1]`, then every entry multiplied by `10^-d`. Entries are drawn in
/// lexicographic order from a ChaCha8 stream seeded with `seed`.
pub fn random_essentially_nonnegative(m: usize, n: usize, d: u32, seed: u64) -> Result<Tensor> {
    if m < 2 || n < 1 {
        return Err(Error::InvalidShape(format!("need m >= 2 and n >= 1, got m={m}, n={n}")));
    }
    let scale = 10f64.powi(-(d as i32));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Tensor::from_fn(m, n, |idx| {
        let u: f64 = rng.gen();
        let diagonal = idx.iter().all(|&i| i == idx[0]);
        let v = if diagonal { -u } else { u };
        v * scale
    })
}
