//! Batch comparison of the homotopy solver against the power-type baseline
//! on seeded random instances.

use rayon::prelude::*;
use serde::Serialize;

use crate::generate::{InstanceSpec, GENERATOR};
use crate::homotopy::{solve_dominant, HomotopyConfig, SolveReport, SolveStatus};
use crate::power::{pta_solve, PtaConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SolverKind {
    Homotopy,
    Pta,
}

impl std::fmt::Display for SolverKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            SolverKind::Homotopy => "homotopy",
            SolverKind::Pta => "pta",
        })
    }
}

/// One solver run on one generated instance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunRecord {
    pub m: usize,
    pub n: usize,
    pub d: u32,
    pub seed: u64,
    pub generator: &'static str,
    pub solver: SolverKind,
    /// `None` when the solver returned an error.
    pub status: Option<SolveStatus>,
    pub lambda: f64,
    pub residual_norm: f64,
    pub iter: usize,
    pub nwtiter: usize,
    pub wall_time_s: f64,
    pub perturbed: bool,
    pub alpha: f64,
    pub error: Option<String>,
}

impl RunRecord {
    fn from_result(spec: InstanceSpec, solver: SolverKind, result: crate::Result<SolveReport>) -> Self {
        let base = RunRecord {
            m: spec.m,
            n: spec.n,
            d: spec.d,
            seed: spec.seed,
            generator: GENERATOR,
            solver,
            status: None,
            lambda: f64::NAN,
            residual_norm: f64::NAN,
            iter: 0,
            nwtiter: 0,
            wall_time_s: 0.0,
            perturbed: false,
            alpha: f64::NAN,
            error: None,
        };
        match result {
            Ok(r) => RunRecord {
                status: Some(r.status),
                lambda: r.eigen.lambda,
                residual_norm: r.residual_norm,
                iter: r.iter,
                nwtiter: r.nwtiter,
                wall_time_s: r.wall_time_s,
                perturbed: r.perturbed,
                alpha: r.alpha,
                ..base
            },
            Err(e) => RunRecord {
                error: Some(e.to_string()),
                ..base
            },
        }
    }

    pub fn converged(&self) -> bool {
        self.status == Some(SolveStatus::Converged)
    }

    /// PTA run stopped by the iteration cap.
    pub fn capped(&self) -> bool {
        self.status == Some(SolveStatus::StepLimit)
    }
}

/// Averages over all records of one solver.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolverSummary {
    pub solver: SolverKind,
    pub runs: usize,
    pub converged: usize,
    pub capped: usize,
    pub errors: usize,
    pub aiter: f64,
    pub anwtiter: f64,
    pub atime: f64,
}

impl SolverSummary {
    pub fn from_records<'a>(solver: SolverKind, records: impl IntoIterator<Item = &'a RunRecord>) -> Self {
        let recs: Vec<&RunRecord> = records.into_iter().filter(|r| r.solver == solver).collect();
        let count = recs.len().max(1) as f64;
        let mean = |f: &dyn Fn(&RunRecord) -> f64| recs.iter().map(|r| f(r)).sum::<f64>() / count;
        SolverSummary {
            solver,
            runs: recs.len(),
            converged: recs.iter().filter(|r| r.converged()).count(),
            capped: recs.iter().filter(|r| r.capped()).count(),
            errors: recs.iter().filter(|r| r.error.is_some()).count(),
            aiter: mean(&|r| r.iter as f64),
            anwtiter: mean(&|r| r.nwtiter as f64),
            atime: mean(&|r| r.wall_time_s),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Comparison {
    pub m: usize,
    pub n: usize,
    pub d: u32,
    pub count: usize,
    pub base_seed: u64,
    /// Instance order; homotopy record before PTA record for each instance.
    pub records: Vec<RunRecord>,
    pub homotopy: SolverSummary,
    pub pta: SolverSummary,
}

impl Comparison {
    /// Per-instance `(homotopy, pta)` pairs.
    pub fn pairs(&self) -> impl Iterator<Item = (&RunRecord, &RunRecord)> {
        self.records.chunks_exact(2).map(|c| (&c[0], &c[1]))
    }
}

/// Generates `count` instances with seeds `base_seed, base_seed + 1, ...` and
/// runs both solvers on each. Solver errors are recorded, not propagated.
pub fn run_comparison(
    m: usize,
    n: usize,
    d: u32,
    count: usize,
    base_seed: u64,
    homotopy: &HomotopyConfig,
    pta: &PtaConfig,
) -> Comparison {
    let records: Vec<RunRecord> = (0..count as u64)
        .into_par_iter()
        .flat_map_iter(|k| {
            let spec = InstanceSpec { m, n, d, seed: base_seed.wrapping_add(k) };
            match spec.generate() {
                Ok(a) => [
                    RunRecord::from_result(spec, SolverKind::Homotopy, solve_dominant(&a, homotopy)),
                    RunRecord::from_result(spec, SolverKind::Pta, pta_solve(&a, pta)),
                ],
                Err(e) => {
                    let msg = e.to_string();
                    [
                        RunRecord::from_result(spec, SolverKind::Homotopy, Err(crate::Error::InvalidShape(msg.clone()))),
                        RunRecord::from_result(spec, SolverKind::Pta, Err(crate::Error::InvalidShape(msg))),
                    ]
                }
            }
        })
        .collect();
    Comparison {
        m,
        n,
        d,
        count,
        base_seed,
        homotopy: SolverSummary::from_records(SolverKind::Homotopy, &records),
        pta: SolverSummary::from_records(SolverKind::Pta, &records),
        records,
    }
}
