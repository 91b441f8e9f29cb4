//! Order 2 is the matrix case: the solver returns the rightmost real
//! eigenvalue of an essentially nonnegative (Metzler) matrix. Checked here
//! against plain power iteration on the shifted matrix.
//!
//! cargo run --example matrix_case

use perron_homotopy::generate::random_essentially_nonnegative;
use perron_homotopy::{solve_dominant, HomotopyConfig, Tensor};

/// Power iteration on `A + shift I`; returns the Rayleigh-type ratio minus
/// the shift.
pub fn power_iteration(a: &Tensor, shift: f64, iters: usize) -> f64 {
    let n = a.dim();
    let mut x = vec![1.0 / (n as f64).sqrt(); n];
    let mut lambda = 0.0;
    for _ in 0..iters {
        let y: Vec<f64> = (0..n)
            .map(|i| (0..n).map(|j| a.get(&[i, j]) * x[j]).sum::<f64>() + shift * x[i])
            .collect();
        lambda = y.iter().zip(&x).map(|(u, v)| u * v).sum::<f64>();
        let nrm = y.iter().map(|v| v * v).sum::<f64>().sqrt();
        x = y.iter().map(|v| v / nrm).collect();
    }
    lambda - shift
}

pub fn run_example() -> perron_homotopy::Result<()> {
    let small = Tensor::new(2, 2, vec![-1.0, 2.0, 3.0, -2.0])?;
    let rep = solve_dominant(&small, &HomotopyConfig::default())?;
    println!("[[-1, 2], [3, -2]]: lambda = {:.12}, x = {:?}", rep.eigen.lambda, rep.eigen.x);

    println!("{:>4} {:>18} {:>18} {:>10}", "seed", "homotopy", "power", "diff");
    for seed in 0..5 {
        let a = random_essentially_nonnegative(2, 5, 0, seed)?;
        let rep = solve_dominant(&a, &HomotopyConfig::default())?;
        let oracle = power_iteration(&a, 1.0, 20_000);
        println!(
            "{seed:>4} {:>18.12} {:>18.12} {:>10.2e}",
            rep.eigen.lambda,
            oracle,
            (rep.eigen.lambda - oracle).abs()
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> perron_homotopy::Result<()> {
    run_example()
}
