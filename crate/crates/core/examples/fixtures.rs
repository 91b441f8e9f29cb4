//! Homotopy solver on the two bundled fixtures and on random large-scale
//! essentially nonnegative tensors.
//!
//! cargo run --release --example fixtures [-- --large]

use perron_homotopy::generate::random_essentially_nonnegative;
use perron_homotopy::{fixtures, solve_dominant, HomotopyConfig, Tensor};

fn row(name: &str, a: &Tensor) -> perron_homotopy::Result<()> {
    let rep = solve_dominant(a, &HomotopyConfig::default())?;
    println!(
        "{name:<14} {:>5} {:>8} {:>10.4} {:>14.6e} {:>10.2e}  {:?}",
        rep.iter, rep.nwtiter, rep.wall_time_s, rep.eigen.lambda, rep.residual_norm, rep.status
    );
    Ok(())
}

pub fn run_example(large: bool) -> perron_homotopy::Result<()> {
    println!("{:<14} {:>5} {:>8} {:>10} {:>14} {:>10}", "example", "iter", "nwtiter", "time(s)", "lambda(A)", "|Q|");
    row("dense_mixed", &fixtures::dense_mixed())?;
    row("sparse_cycle", &fixtures::sparse_cycle())?;
    if large {
        row("random (3,100)", &random_essentially_nonnegative(3, 100, 0, 2024)?)?;
        row("random (4,50)", &random_essentially_nonnegative(4, 50, 0, 2024)?)?;
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> perron_homotopy::Result<()> {
    run_example(std::env::args().any(|a| a == "--large"))
}
