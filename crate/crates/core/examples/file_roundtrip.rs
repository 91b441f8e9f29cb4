//! Generate a seeded instance, write it to a tensor file, read it back and
//! solve it with both solvers.
//!
//! cargo run --example file_roundtrip [-- OUT_PATH]

use std::path::Path;

use perron_homotopy::generate::InstanceSpec;
use perron_homotopy::{pta_solve, solve_dominant, HomotopyConfig, PtaConfig, TensorFile, TensorFormat};

pub fn run_example(path: &Path) -> perron_homotopy::Result<()> {
    let spec = InstanceSpec { m: 4, n: 6, d: 1, seed: 11 };
    let a = spec.generate()?;
    TensorFile::new(TensorFormat::Coo, a.clone()).write(path)?;
    let back = TensorFile::read(path)?.tensor;
    assert_eq!(back, a, "write/read must be exact");

    let h = solve_dominant(&back, &HomotopyConfig::default())?;
    let p = pta_solve(&back, &PtaConfig::default())?;
    println!("file      {}", path.display());
    println!("homotopy  lambda = {:.12}  iter = {}  |Q| = {:.2e}", h.eigen.lambda, h.iter, h.residual_norm);
    println!("pta       lambda = {:.12}  iter = {}  |Q| = {:.2e}", p.eigen.lambda, p.iter, p.residual_norm);
    Ok(())
}

#[allow(dead_code)]
fn main() -> perron_homotopy::Result<()> {
    let path = std::env::args()
        .nth(1)
        .map(Into::into)
        .unwrap_or_else(|| std::env::temp_dir().join("perron_roundtrip.tns"));
    run_example(&path)
}
