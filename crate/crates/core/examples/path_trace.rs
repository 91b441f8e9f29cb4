//! Step-by-step trace of the prediction-correction path from the rank-one
//! start (tau = 0) to the target tensor (tau = 1), showing the adaptive step
//! size and the positivity of every accepted iterate.
//!
//! cargo run --example path_trace [-- FILE]

use perron_homotopy::{fixtures, solve_dominant, HomotopyConfig, Tensor, TensorFile};

pub fn run_example(a: &Tensor) -> perron_homotopy::Result<()> {
    let rep = solve_dominant(a, &HomotopyConfig::default())?;
    println!("{:>4} {:>10} {:>10} {:>16} {:>12} {:>7}", "step", "tau", "dtau", "lambda*", "min x", "newton");
    for (k, s) in rep.path.iter().enumerate() {
        println!(
            "{k:>4} {:>10.6} {:>10.6} {:>16.10} {:>12.4e} {:>7}",
            s.tau, s.dtau, s.lambda, s.min_x, s.newton_iters
        );
    }
    println!(
        "{:?}: lambda(A) = {:.10}, |Q| = {:.2e}, {} steps ({} rejected), {} Newton iterations",
        rep.status, rep.eigen.lambda, rep.residual_norm, rep.iter, rep.rejected_steps, rep.nwtiter
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> perron_homotopy::Result<()> {
    let a = match std::env::args().nth(1) {
        Some(path) => TensorFile::read(path)?.tensor,
        None => fixtures::dense_mixed(),
    };
    run_example(&a)
}
