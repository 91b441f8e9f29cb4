//! A reducible input: two decoupled 2-dimensional blocks. The solver detects
//! that the index graph is not strongly connected, perturbs every entry by
//! eps and follows the path on the perturbed tensor. The result tracks the
//! larger of the two block eigenvalues.
//!
//! cargo run --example reducible

use perron_homotopy::tensor::weak_irreducibility_check;
use perron_homotopy::{solve_dominant, Assume, HomotopyConfig, Tensor};

/// Order-3 tensor on 4 indices; `a[i,j,k]` is nonzero only when all three
/// indices lie in the same block {0,1} or {2,3}.
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
    .expect("valid shape")
}

pub fn run_example() -> perron_homotopy::Result<()> {
    let first = Tensor::from_fn(3, 2, |idx| 0.2 + 0.1 * (idx[0] + 2 * idx[1] + idx[2]) as f64)?;
    let second = Tensor::from_fn(3, 2, |idx| 0.6 + 0.3 * (idx[0] * idx[2] + idx[1]) as f64)?;
    let a = block_diagonal(&first, &second);
    assert!(!weak_irreducibility_check(&a));

    let exact = HomotopyConfig { assume: Assume::Irreducible, ..HomotopyConfig::default() };
    let l1 = solve_dominant(&first, &exact)?.eigen.lambda;
    let l2 = solve_dominant(&second, &exact)?.eigen.lambda;

    let rep = solve_dominant(&a, &HomotopyConfig::default())?;
    println!("block eigenvalues   {l1:.10}  {l2:.10}");
    println!("full tensor         {:.10}  ({:?}, perturbed = {})", rep.eigen.lambda, rep.status, rep.perturbed);
    println!("eigenvector         {:?}", rep.eigen.x);
    println!("|lambda - max|      {:.2e}", (rep.eigen.lambda - l1.max(l2)).abs());
    for note in &rep.notes {
        println!("note: {note}");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> perron_homotopy::Result<()> {
    run_example()
}
