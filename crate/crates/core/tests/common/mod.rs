//! Independent oracles shared by the integration tests.

#![allow(dead_code)]

use perron_homotopy::Tensor;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Dominant eigenvalue of a 2x2 essentially nonnegative matrix `A`, by
/// power iteration on `A + shift I` until the iterate stops moving.
pub fn matrix_power_iteration(a: &Tensor, shift: f64) -> f64 {
    assert_eq!(a.order(), 2);
    let n = a.dim();
    let mut x = vec![1.0 / (n as f64).sqrt(); n];
    for _ in 0..2_000_000 {
        let y: Vec<f64> = (0..n)
            .map(|i| (0..n).map(|j| a.get(&[i, j]) * x[j]).sum::<f64>() + shift * x[i])
            .collect();
        let nrm = y.iter().map(|v| v * v).sum::<f64>().sqrt();
        let next: Vec<f64> = y.iter().map(|v| v / nrm).collect();
        let moved = next.iter().zip(&x).map(|(u, v)| (u - v).abs()).fold(0.0, f64::max);
        x = next;
        if moved < 1e-15 {
            break;
        }
    }
    let ax: Vec<f64> = (0..n).map(|i| (0..n).map(|j| a.get(&[i, j]) * x[j]).sum()).collect();
    ax.iter().zip(&x).map(|(u, v)| u * v).sum()
}

/// Dominant eigenvalue of a positive order-3, dimension-2 tensor. The positive
/// eigenvector is `(cos t, sin t)`; bisection on `t` equates the two
/// component ratios `(B x^2)_i / x_i^2`.
pub fn block_eigenvalue_bisection(b: &Tensor) -> f64 {
    assert!(b.order() == 3 && b.dim() == 2 && b.is_positive());
    let ratios = |t: f64| {
        let x = [t.cos(), t.sin()];
        let mut r = [0.0; 2];
        for (i, ri) in r.iter_mut().enumerate() {
            let mut s = 0.0;
            for j in 0..2 {
                for k in 0..2 {
                    s += b.get(&[i, j, k]) * x[j] * x[k];
                }
            }
            *ri = s / (x[i] * x[i]);
        }
        r
    };
    let f = |t: f64| {
        let r = ratios(t);
        r[0] - r[1]
    };
    let (mut lo, mut hi) = (1e-12, std::f64::consts::FRAC_PI_2 - 1e-12);
    assert!(f(lo) < 0.0 && f(hi) > 0.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    ratios(0.5 * (lo + hi))[0]
}

/// Order-3 tensor on 4 indices built from two 2-dimensional blocks.
pub fn block_diagonal(first: &Tensor, second: &Tensor) -> Tensor {
    Tensor::from_fn(3, 4, |idx| {
        if idx.iter().all(|&i| i < 2) {
            first.get(idx)
        } else if idx.iter().all(|&i| i >= 2) {
            let local: Vec<usize> = idx.iter().map(|i| i - 2).collect();
            second.get(&local)
        } else {
            0.0
        }
    })
    .unwrap()
}

/// Fully symmetric essentially nonnegative tensor: the entry depends only on
/// the sorted index.
pub fn random_symmetric(order: usize, dim: usize, seed: u64) -> Tensor {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut values = std::collections::HashMap::new();
    Tensor::from_fn(order, dim, |idx| {
        let mut key = idx.to_vec();
        key.sort_unstable();
        let diagonal = key.iter().all(|&i| i == key[0]);
        *values.entry(key).or_insert_with(|| {
            let u: f64 = rng.gen();
            if diagonal {
                -u
            } else {
                u
            }
        })
    })
    .unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn positive_vector(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.gen_range(0.2..2.0)).collect()
}
