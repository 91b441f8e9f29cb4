//! Homotopy solver against the power-type baseline on random tensors whose
//! entries are scaled by 10^-d. Small d favours the baseline; as d grows its
//! linear rate approaches 1 and it hits the iteration cap while the homotopy
//! step count stays flat.
//!
//! cargo run --release --example scaling_sweep [-- COUNT]

use perron_homotopy::compare::run_comparison;
use perron_homotopy::{Assume, HomotopyConfig, PtaConfig};

const CELLS: &[(usize, usize, u32)] = &[
    (3, 10, 3),
    (3, 10, 4),
    (3, 10, 5),
    (3, 10, 6),
    (4, 10, 4),
    (4, 10, 5),
    (4, 10, 6),
    (3, 20, 4),
    (3, 20, 5),
    (3, 20, 6),
];

pub fn run_example(count: usize) -> perron_homotopy::Result<()> {
    // Both solvers work on A_eps + alpha I.
    let hc = HomotopyConfig {
        assume: Assume::Reducible,
        ..HomotopyConfig::default()
    };
    let pc = PtaConfig::default();
    println!(
        "{:>7} {:>2} | {:>6} {:>8} {:>8} | {:>9} {:>8} {:>7}",
        "(m,n)", "d", "Aiter", "Anwtiter", "Atime", "Aiter", "Atime", "capped"
    );
    for &(m, n, d) in CELLS {
        let cmp = run_comparison(m, n, d, count, 1000 * d as u64, &hc, &pc);
        println!(
            "{:>7} {:>2} | {:>6.2} {:>8.2} {:>8.4} | {:>9.1} {:>8.4} {:>4}/{}",
            format!("({m},{n})"),
            d,
            cmp.homotopy.aiter,
            cmp.homotopy.anwtiter,
            cmp.homotopy.atime,
            cmp.pta.aiter,
            cmp.pta.atime,
            cmp.pta.capped,
            cmp.pta.runs,
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> perron_homotopy::Result<()> {
    let count = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(20);
    run_example(count)
}
