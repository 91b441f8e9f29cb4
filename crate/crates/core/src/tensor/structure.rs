use std::collections::VecDeque;

use super::{increment, power_vector, tvp, EigenPair, Tensor};
use crate::error::{Error, Result};

/// Returns `alpha = max_i |a_{i...i}| + 1` and `A + alpha I`, which is
/// entrywise nonnegative when `A` is essentially nonnegative.
pub fn alpha_shift(a: &Tensor) -> Result<(f64, Tensor)> {
    a.check_essentially_nonnegative()?;
    let alpha = a.diagonal().iter().fold(0.0_f64, |acc, v| acc.max(v.abs())) + 1.0;
    Ok((alpha, a.add_unit(alpha)))
}

fn check_positive(name: &str, v: &[f64]) -> Result<()> {
    match v.iter().position(|&c| !(c > 0.0 && c.is_finite())) {
        Some(i) => Err(Error::InvalidArgument(format!(
            "{name}[{i}] = {} is not strictly positive",
            v[i]
        ))),
        None => Ok(()),
    }
}

fn check_start_vectors(a: &[f64], b: &[f64], order: usize) -> Result<()> {
    if order < 2 {
        return Err(Error::InvalidShape(format!("order must be at least 2, got {order}")));
    }
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch {
            expected: a.len(),
            found: b.len(),
        });
    }
    check_positive("a", a)?;
    check_positive("b", b)
}

/// Rank-one positive tensor with `s[i1, i2, ..., im] = a[i1]^{m-1} b[i2] ... b[im]`.
pub fn rank_one_start(a: &[f64], b: &[f64], order: usize) -> Result<Tensor> {
    check_start_vectors(a, b, order)?;
    let n = a.len();
    let head = power_vector(a, (order - 1) as f64)?;
    let mut s = Tensor::zeros(order, n)?;
    let mut idx = vec![0usize; order];
    for entry in s.entries.iter_mut() {
        *entry = head[idx[0]] * idx[1..].iter().map(|&j| b[j]).product::<f64>();
        increment(&mut idx, n);
    }
    Ok(s)
}

/// Perron pair of [`rank_one_start`]: `((a.b)^{m-1}, a / |a|)`.
pub fn start_pair(a: &[f64], b: &[f64], order: usize) -> Result<EigenPair> {
    check_start_vectors(a, b, order)?;
    let ab: f64 = a.iter().zip(b).map(|(p, q)| p * q).sum();
    EigenPair::new(ab.powi(order as i32 - 1), a.to_vec())
}

/// `A + E` with `E` the constant-`eps` tensor.
pub fn perturb(a: &Tensor, eps: f64) -> Result<Tensor> {
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "perturbation must be positive, got {eps}"
        )));
    }
    Ok(Tensor {
        order: a.order,
        dim: a.dim,
        entries: a.entries.iter().map(|v| v + eps).collect(),
    })
}

/// Strong connectivity of the digraph with an edge `i -> j` (`i != j`)
/// whenever some nonzero entry `a[i, i2, ..., im]` has `j` among its trailing
/// indices.
///
/// Failure certifies reducibility of a nonnegative tensor. Success is used as
/// the irreducibility gate by the solver.
pub fn weak_irreducibility_check(a: &Tensor) -> bool {
    let n = a.dim();
    if n == 1 {
        return true;
    }
    let block = a.entries().len() / n;
    let mut adj = vec![vec![false; n]; n];
    let mut idx = vec![0usize; a.order() - 1];
    for i in 0..n {
        idx.iter_mut().for_each(|v| *v = 0);
        for &value in &a.entries()[i * block..(i + 1) * block] {
            if value != 0.0 {
                for &j in &idx {
                    if j != i {
                        adj[i][j] = true;
                    }
                }
            }
            increment(&mut idx, n);
        }
    }
    let reaches_all = |forward: bool| {
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(u) = queue.pop_front() {
            for v in 0..n {
                let edge = if forward { adj[u][v] } else { adj[v][u] };
                if edge && !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        seen.into_iter().all(|s| s)
    };
    reaches_all(true) && reaches_all(false)
}

/// Target residual `(T x^{m-1} - lambda x^{[m-1]}; x.x - 1)`, length `n + 1`.
pub fn residual_q(t: &Tensor, lambda: f64, x: &[f64]) -> Result<Vec<f64>> {
    let mut r = tvp(t, x)?;
    let m1 = (t.order() - 1) as i32;
    for (ri, xi) in r.iter_mut().zip(x) {
        *ri -= lambda * xi.powi(m1);
    }
    r.push(x.iter().map(|v| v * v).sum::<f64>() - 1.0);
    Ok(r)
}
