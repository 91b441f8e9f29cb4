use itertools::Itertools;

use super::{increment, Tensor};
use crate::error::{Error, Result};
use crate::linalg::Matrix;

/// `T x^{m-1}`: component `i` is the sum over trailing indices of
/// `t[i, i2, ..., im] * x[i2] * ... * x[im]`.
pub fn tvp(t: &Tensor, x: &[f64]) -> Result<Vec<f64>> {
    t.check_vector(x)?;
    let n = t.dim();
    // Contract the fastest index m-1 times.
    let mut current: Vec<f64> = t
        .entries()
        .chunks_exact(n)
        .map(|row| dot(row, x))
        .collect();
    for _ in 2..t.order() {
        current = current.chunks_exact(n).map(|row| dot(row, x)).collect();
    }
    Ok(current)
}

#[inline]
fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(p, q)| p * q).sum()
}

/// Componentwise `x_i^p`.
pub fn power_vector(x: &[f64], p: f64) -> Result<Vec<f64>> {
    let integral = p.fract() == 0.0 && p.abs() <= i32::MAX as f64;
    if integral {
        let e = p as i32;
        return Ok(x.iter().map(|v| v.powi(e)).collect());
    }
    if let Some(i) = x.iter().position(|&v| v < 0.0) {
        return Err(Error::Domain(format!(
            "negative component x[{i}] = {} raised to fractional power {p}",
            x[i]
        )));
    }
    Ok(x.iter().map(|v| v.powf(p)).collect())
}

/// Jacobian of `x -> T x^{m-1}`, accumulated directly over the `m-1` trailing
/// index positions: entry `(i, j)` sums every term in which position `k` holds
/// `j`, with `x[j]` removed from the product.
pub fn jacobian_of_tvp(t: &Tensor, x: &[f64]) -> Result<Matrix> {
    t.check_vector(x)?;
    let n = t.dim();
    let trailing = t.order() - 1;
    let mut jac = Matrix::zeros(n);
    if trailing == 1 {
        for i in 0..n {
            jac.row_mut(i).copy_from_slice(&t.entries()[i * n..(i + 1) * n]);
        }
        return Ok(jac);
    }

    let block = n.pow(trailing as u32);
    let mut idx = vec![0usize; trailing];
    let mut prefix = vec![1.0; trailing + 1];
    let mut suffix = vec![1.0; trailing + 1];
    for i in 0..n {
        let entries = &t.entries()[i * block..(i + 1) * block];
        let row = jac.row_mut(i);
        idx.iter_mut().for_each(|v| *v = 0);
        for &value in entries {
            if value != 0.0 {
                for l in 0..trailing {
                    prefix[l + 1] = prefix[l] * x[idx[l]];
                }
                for l in (0..trailing).rev() {
                    suffix[l] = suffix[l + 1] * x[idx[l]];
                }
                for k in 0..trailing {
                    row[idx[k]] += value * prefix[k] * suffix[k + 1];
                }
            }
            increment(&mut idx, n);
        }
    }
    Ok(jac)
}

/// Averages each entry over all `(m-1)!` permutations of its trailing
/// indices (repeated indices counted with multiplicity).
pub fn semi_symmetrize(t: &Tensor) -> Tensor {
    let m = t.order();
    let trailing = m - 1;
    let perms: Vec<Vec<usize>> = (0..trailing).permutations(trailing).collect();
    let count = perms.len() as f64;
    let mut permuted = vec![0usize; m];
    let entries = (0..t.entries().len())
        .map(|pos| {
            let idx = t.multi_index(pos);
            permuted[0] = idx[0];
            let total: f64 = perms
                .iter()
                .map(|p| {
                    for (k, &src) in p.iter().enumerate() {
                        permuted[k + 1] = idx[src + 1];
                    }
                    t.get(&permuted)
                })
                .sum();
            total / count
        })
        .collect();
    Tensor::new(m, t.dim(), entries).expect("averages of finite entries are finite")
}
