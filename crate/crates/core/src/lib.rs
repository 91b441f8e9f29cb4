//! Dominant eigenpairs of essentially nonnegative tensors.
//!
//! The main entry point is [`solve_dominant`], which shifts the input to a
//! nonnegative tensor, deforms a rank-one start system into it and follows
//! the Perron pair along the way with an Euler-Newton predictor-corrector.
//! [`pta_solve`] is a power-type baseline for cross-checking.
//!
//! ```
//! use perron_homotopy::{fixtures, solve_dominant, HomotopyConfig};
//!
//! let report = solve_dominant(&fixtures::sparse_cycle(), &HomotopyConfig::default()).unwrap();
//! assert!((report.eigen.lambda - 1.0).abs() < 1e-8);
//! ```

pub mod cli;
pub mod compare;
pub mod error;
pub mod fixtures;
pub mod generate;
pub mod homotopy;
pub mod io;
pub mod linalg;
pub mod power;
pub mod tensor;

pub use error::{Error, Result};
pub use homotopy::{
    solve_dominant, solve_dominant_with_start, Assume, Homotopy, HomotopyConfig, PathState,
    SolveReport, SolveStatus,
};
pub use io::{TensorFile, TensorFormat};
pub use power::{convergence_rate_estimate, pta_solve, PtaConfig};
pub use tensor::{EigenPair, Tensor};
