//! Power-type baseline (NQZ-style iteration with eigenvalue bracketing) on
//! the perturbed, shifted tensor `A_eps + alpha I`.

use std::time::Instant;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::homotopy::{SolveReport, SolveStatus};
use crate::linalg::norm2;
use crate::tensor::{alpha_shift, perturb, power_vector, residual_q, start_pair, tvp, EigenPair, Tensor};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PtaConfig {
    pub tol: f64,
    pub max_iter: usize,
    pub eps_perturb: f64,
}

impl Default for PtaConfig {
    fn default() -> Self {
        PtaConfig {
            tol: 1e-10,
            max_iter: 50_000,
            eps_perturb: 1e-9,
        }
    }
}

impl PtaConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0) {
            return Err(Error::InvalidConfig("need tol > 0".into()));
        }
        if self.max_iter == 0 {
            return Err(Error::InvalidConfig("need max_iter >= 1".into()));
        }
        if !(self.eps_perturb > 0.0) {
            return Err(Error::InvalidConfig("need eps_perturb > 0".into()));
        }
        Ok(())
    }
}

/// Per-iteration bracket `[lambda_min, lambda_max]` of the Perron root.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Bracket {
    pub lower: f64,
    pub upper: f64,
}

/// Full PTA outcome: the shared report plus the bracket history.
#[derive(Debug, Clone)]
pub struct PtaRun {
    pub report: SolveReport,
    pub brackets: Vec<Bracket>,
}

/// PTA from the default start `x0 = 1 / sqrt(n)`.
pub fn pta_solve(a: &Tensor, config: &PtaConfig) -> Result<SolveReport> {
    let ones = vec![1.0; a.dim()];
    let x0 = start_pair(&ones, &ones, a.order())?.x;
    pta_solve_from(a, config, &x0).map(|run| run.report)
}

/// PTA from a strictly positive `x0`.
pub fn pta_solve_from(a: &Tensor, config: &PtaConfig, x0: &[f64]) -> Result<PtaRun> {
    config.validate()?;
    a.check_vector(x0)?;
    if let Some(i) = x0.iter().position(|&v| !(v > 0.0)) {
        return Err(Error::InvalidArgument(format!("x0[{i}] = {} is not strictly positive", x0[i])));
    }
    let (alpha, _) = alpha_shift(a)?;
    let t = perturb(a, config.eps_perturb)?.add_unit(alpha);
    let m1 = (a.order() - 1) as f64;
    let inv = 1.0 / m1;

    let clock = Instant::now();
    let mut x = EigenPair::new(0.0, x0.to_vec())?.x;
    let mut brackets = Vec::new();
    let mut k = 0;
    let (status, lambda, residual_norm) = loop {
        let y = tvp(&t, &x)?;
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for (yi, xi) in y.iter().zip(&x) {
            let ratio = yi / xi.powf(m1);
            lo = lo.min(ratio);
            hi = hi.max(ratio);
        }
        brackets.push(Bracket { lower: lo, upper: hi });
        let lambda = 0.5 * (lo + hi);
        let res = norm2(&residual_q(&t, lambda, &x)?);
        if res <= config.tol {
            break (SolveStatus::Converged, lambda, res);
        }
        if k >= config.max_iter {
            break (SolveStatus::StepLimit, lambda, res);
        }
        let mut next = power_vector(&y, inv)?;
        let nrm = norm2(&next);
        next.iter_mut().for_each(|v| *v /= nrm);
        assert!(
            next.iter().all(|&v| v > 0.0),
            "PTA iterate lost positivity on a positive tensor"
        );
        x = next;
        k += 1;
    };
    let wall_time_s = clock.elapsed().as_secs_f64();

    Ok(PtaRun {
        report: SolveReport {
            eigen: EigenPair { lambda: lambda - alpha, x },
            lambda_star: lambda,
            alpha,
            eps: config.eps_perturb,
            residual_norm,
            iter: k,
            nwtiter: 0,
            wall_time_s,
            perturbed: true,
            status,
            rejected_steps: 0,
            path: Vec::new(),
            notes: Vec::new(),
        },
        brackets,
    })
}

/// Linear-rate bound `1 - min_{i,j} t[i,j,...,j] / max_i sum t[i,...]` for a
/// nonnegative tensor.
pub fn convergence_rate_estimate(t: &Tensor) -> Result<f64> {
    if !t.is_nonnegative() {
        return Err(Error::Domain("rate estimate needs a nonnegative tensor".into()));
    }
    let n = t.dim();
    let block = t.entries().len() / n;
    let max_row_sum = t
        .entries()
        .chunks_exact(block)
        .map(|row| row.iter().sum::<f64>())
        .fold(0.0_f64, f64::max);
    if max_row_sum <= 0.0 {
        return Err(Error::Domain("rate estimate undefined for the zero tensor".into()));
    }
    let order = t.order();
    let mut idx = vec![0usize; order];
    let mut min_entry = f64::INFINITY;
    for i in 0..n {
        idx[0] = i;
        for j in 0..n {
            idx[1..].iter_mut().for_each(|v| *v = j);
            min_entry = min_entry.min(t.get(&idx));
        }
    }
    Ok(1.0 - min_entry / max_row_sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::tensor::rank_one_start;

    #[test]
    fn rate_of_all_ones() {
        let t = Tensor::from_fn(3, 2, |_| 1.0).unwrap();
        assert_eq!(convergence_rate_estimate(&t).unwrap(), 0.75);
    }

    #[test]
    fn rate_of_unit_tensor_is_one() {
        assert_eq!(convergence_rate_estimate(&Tensor::unit(3, 4).unwrap()).unwrap(), 1.0);
    }

    #[test]
    fn rate_scale_invariant() {
        let t = rank_one_start(&[1.0, 2.0, 0.5], &[0.3, 1.0, 2.0], 3).unwrap();
        let r0 = convergence_rate_estimate(&t).unwrap();
        for d in 1..8 {
            let r = convergence_rate_estimate(&t.scaled(10f64.powi(-d))).unwrap();
            assert!((r - r0).abs() <= 1e-12);
        }
    }

    #[test]
    fn rate_errors() {
        assert!(matches!(
            convergence_rate_estimate(&Tensor::zeros(3, 2).unwrap()),
            Err(Error::Domain(_))
        ));
        assert!(convergence_rate_estimate(&Tensor::unit(3, 2).unwrap().scaled(-1.0)).is_err());
    }

    #[test]
    fn dense_mixed() {
        let rep = pta_solve(&fixtures::dense_mixed(), &PtaConfig::default()).unwrap();
        assert_eq!(rep.status, SolveStatus::Converged);
        assert!((rep.eigen.lambda - 36.2757).abs() <= 1e-3);
        assert!(rep.residual_norm <= 1e-10);
    }

    #[test]
    fn rank_one_input_recovers_closed_form() {
        let (a, b) = ([1.0, 2.0, 1.5], [0.5, 1.0, 2.0]);
        let s = rank_one_start(&a, &b, 3).unwrap();
        let p0 = start_pair(&a, &b, 3).unwrap();
        let run = pta_solve_from(&s, &PtaConfig::default(), &[1.0, 1.0, 1.0]).unwrap();
        let rep = run.report;
        assert_eq!(rep.status, SolveStatus::Converged);
        // alpha = max diagonal + 1; the perturbation moves rho by at most eps n^2.
        let diag_max = s.diagonal().iter().cloned().fold(0.0, f64::max);
        assert!((rep.alpha - (diag_max + 1.0)).abs() < 1e-12);
        assert!((rep.eigen.lambda - p0.lambda).abs() <= 1e-7, "{} vs {}", rep.eigen.lambda, p0.lambda);
        for (u, v) in rep.eigen.x.iter().zip(&p0.x) {
            assert!((u - v).abs() <= 1e-6);
        }
    }

    #[test]
    fn brackets_are_ordered_and_contain_the_limit() {
        let run = pta_solve_from(&fixtures::sparse_cycle(), &PtaConfig::default(), &[1.0; 3]).unwrap();
        assert_eq!(run.report.status, SolveStatus::Converged);
        let final_lambda = run.report.lambda_star;
        for b in &run.brackets {
            assert!(b.lower <= b.upper);
            assert!(b.lower <= final_lambda + 1e-9 && final_lambda <= b.upper + 1e-9);
        }
    }

    #[test]
    fn iterates_stay_unit_and_positive() {
        let rep = pta_solve(&fixtures::dense_mixed(), &PtaConfig { max_iter: 3, tol: 1e-300, ..PtaConfig::default() }).unwrap();
        assert_eq!(rep.status, SolveStatus::StepLimit);
        assert_eq!(rep.iter, 3);
        assert!(rep.eigen.x.iter().all(|&v| v > 0.0));
        assert!((crate::linalg::dot(&rep.eigen.x, &rep.eigen.x) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn rejects_bad_input() {
        let mut a = Tensor::zeros(3, 2).unwrap();
        a.set(&[1, 0, 0], -1.0).unwrap();
        assert!(pta_solve(&a, &PtaConfig::default()).is_err());
        let ok = Tensor::from_fn(3, 2, |_| 1.0).unwrap();
        assert!(pta_solve_from(&ok, &PtaConfig::default(), &[1.0, 0.0]).is_err());
        assert!(pta_solve(&ok, &PtaConfig { tol: 0.0, ..PtaConfig::default() }).is_err());
    }
}
