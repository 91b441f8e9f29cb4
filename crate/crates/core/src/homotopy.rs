//! Euler-Newton path following for the convex homotopy between the rank-one
//! start system and the shifted target tensor.
//!
//! The unknown is `u = (lambda, x1, ..., xn)`. For `tau` in `[0, 1]`,
//!
//! ```text
//! H(tau, u) = ( (tau T + (1 - tau) S) x^{m-1} - lambda x^{[m-1]} ;  x.x - 1 )
//! ```
//!
//! At `tau = 0` the solution is the closed-form Perron pair of `S`; at
//! `tau = 1` it is the Perron pair of `T = A + alpha I`, from which the
//! dominant eigenpair of `A` is read off.

use std::time::Instant;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{norm2, LuFactorization, Matrix};
use crate::tensor::{
    alpha_shift, jacobian_of_tvp, perturb, rank_one_start, residual_q, start_pair, tvp,
    weak_irreducibility_check, EigenPair, Tensor,
};

/// How the solver decides whether to apply the constant-`eps` perturbation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Assume {
    /// Perturb when the connectivity check fails; retry perturbed if an
    /// unperturbed endgame does not converge.
    Auto,
    Irreducible,
    Reducible,
}

impl std::str::FromStr for Assume {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "auto" => Ok(Assume::Auto),
            "irreducible" => Ok(Assume::Irreducible),
            "reducible" => Ok(Assume::Reducible),
            other => Err(format!("unknown irreducibility mode '{other}'")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HomotopyConfig {
    pub dtau0: f64,
    /// Newton tolerance along the path.
    pub eps1: f64,
    /// Newton tolerance in the endgame.
    pub eps2: f64,
    /// Path following stops at `tau = beta`; the endgame jumps to 1.
    pub beta: f64,
    pub eps_perturb: f64,
    pub max_steps: usize,
    pub newton_cap_path: usize,
    pub newton_cap_endgame: usize,
    pub dtau_min: f64,
    pub dtau_max: f64,
    pub assume: Assume,
}

impl Default for HomotopyConfig {
    fn default() -> Self {
        HomotopyConfig {
            dtau0: 0.1,
            eps1: 1e-5,
            eps2: 1e-10,
            beta: 0.9999,
            eps_perturb: 1e-9,
            max_steps: 50_000,
            newton_cap_path: 10,
            newton_cap_endgame: 100,
            dtau_min: 1e-6,
            dtau_max: 0.4,
            assume: Assume::Auto,
        }
    }
}

impl HomotopyConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidConfig(msg.to_string()));
        if !(self.dtau_min > 0.0 && self.dtau_min <= self.dtau_max) {
            return bad("need 0 < dtau_min <= dtau_max");
        }
        if !(self.dtau0 > 0.0 && self.dtau0 <= self.dtau_max) {
            return bad("need 0 < dtau0 <= dtau_max");
        }
        if !(self.eps2 > 0.0 && self.eps2 <= self.eps1) {
            return bad("need 0 < eps2 <= eps1");
        }
        if !(self.beta > 0.0 && self.beta < 1.0) {
            return bad("need 0 < beta < 1");
        }
        if !(self.eps_perturb > 0.0) {
            return bad("need eps_perturb > 0");
        }
        if self.max_steps == 0 || self.newton_cap_path == 0 || self.newton_cap_endgame == 0 {
            return bad("iteration caps must be at least 1");
        }
        Ok(())
    }
}

/// Current point on the path plus the bookkeeping for step control.
#[derive(Debug, Clone, PartialEq)]
pub struct PathState {
    pub tau: f64,
    pub lambda: f64,
    pub x: Vec<f64>,
    pub dtau: f64,
    /// Whether each of the two most recent accepted steps avoided halving,
    /// oldest first.
    pub last_two_uncut: [bool; 2],
    pub step_count: usize,
    pub newton_total: usize,
}

impl PathState {
    pub fn start(pair: &EigenPair, dtau: f64) -> Self {
        PathState {
            tau: 0.0,
            lambda: pair.lambda,
            x: pair.x.clone(),
            dtau,
            last_two_uncut: [false, false],
            step_count: 0,
            newton_total: 0,
        }
    }

    pub fn u(&self) -> Vec<f64> {
        let mut u = Vec::with_capacity(self.x.len() + 1);
        u.push(self.lambda);
        u.extend_from_slice(&self.x);
        u
    }

    fn accept(&mut self, tau: f64, u: Vec<f64>, newton_iters: usize) {
        self.tau = tau;
        self.lambda = u[0];
        self.x = u[1..].to_vec();
        self.step_count += 1;
        self.newton_total += newton_iters;
        self.last_two_uncut = [self.last_two_uncut[1], newton_iters <= HALVING_NEWTON_THRESHOLD];
    }
}

/// More Newton iterations than this in a correction halves the next step.
pub const HALVING_NEWTON_THRESHOLD: usize = 3;

/// Next step size after an accepted step that used `newton_iters` Newton
/// iterations. `state.last_two_uncut` must already include this step.
pub fn update_step_size(state: &PathState, newton_iters: usize, config: &HomotopyConfig) -> f64 {
    if newton_iters > HALVING_NEWTON_THRESHOLD {
        (0.5 * state.dtau).max(config.dtau_min)
    } else if state.last_two_uncut == [true, true] {
        (2.0 * state.dtau).min(config.dtau_max)
    } else {
        state.dtau
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SolveStatus {
    Converged,
    StepLimit,
    EndgameFailure,
}

impl SolveStatus {
    pub fn is_converged(self) -> bool {
        self == SolveStatus::Converged
    }
}

/// One accepted point on the path.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PathSample {
    pub tau: f64,
    pub lambda: f64,
    pub min_x: f64,
    pub dtau: f64,
    pub newton_iters: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolveReport {
    /// Dominant eigenpair of the input, `lambda = lambda_star - alpha`.
    pub eigen: EigenPair,
    /// Eigenvalue of the shifted tensor the solver actually worked on.
    pub lambda_star: f64,
    pub alpha: f64,
    /// Perturbation added to every entry, zero when unperturbed.
    pub eps: f64,
    /// `|Q|` on the shifted tensor at `(lambda_star, x)`.
    pub residual_norm: f64,
    pub iter: usize,
    pub nwtiter: usize,
    pub wall_time_s: f64,
    pub perturbed: bool,
    pub status: SolveStatus,
    pub rejected_steps: usize,
    pub path: Vec<PathSample>,
    pub notes: Vec<String>,
}

impl SolveReport {
    /// Rebuilds the shifted tensor this report's residual refers to.
    pub fn shifted_tensor(&self, a: &Tensor) -> Result<Tensor> {
        let base = if self.eps > 0.0 {
            perturb(a, self.eps)?
        } else {
            a.clone()
        };
        Ok(base.add_unit(self.alpha))
    }
}

/// Result of a Newton correction.
#[derive(Debug, Clone)]
pub struct NewtonOutcome {
    pub u: Vec<f64>,
    pub iters: usize,
    /// Residual norms, starting with the initial point.
    pub residuals: Vec<f64>,
}

/// A Newton run that did not reach its tolerance.
#[derive(Debug)]
pub struct NewtonFailure {
    pub error: Error,
    pub iters: usize,
}

/// The homotopy between a target tensor `T` and a start tensor `S`.
#[derive(Debug, Clone, Copy)]
pub struct Homotopy<'a> {
    target: &'a Tensor,
    start: &'a Tensor,
}

impl<'a> Homotopy<'a> {
    pub fn new(target: &'a Tensor, start: &'a Tensor) -> Result<Self> {
        if target.order() != start.order() || target.dim() != start.dim() {
            return Err(Error::InvalidShape(format!(
                "target ({}, {}) and start ({}, {}) differ in shape",
                target.order(),
                target.dim(),
                start.order(),
                start.dim()
            )));
        }
        Ok(Homotopy { target, start })
    }

    pub fn dim(&self) -> usize {
        self.target.dim()
    }

    pub fn order(&self) -> usize {
        self.target.order()
    }

    fn split<'u>(&self, u: &'u [f64]) -> Result<(f64, &'u [f64])> {
        if u.len() != self.dim() + 1 {
            return Err(Error::DimensionMismatch {
                expected: self.dim() + 1,
                found: u.len(),
            });
        }
        Ok((u[0], &u[1..]))
    }

    /// `H(tau, u)`, length `n + 1`.
    pub fn residual(&self, tau: f64, u: &[f64]) -> Result<Vec<f64>> {
        let (lambda, x) = self.split(u)?;
        let tx = tvp(self.target, x)?;
        let sx = tvp(self.start, x)?;
        let m1 = (self.order() - 1) as i32;
        let mut h: Vec<f64> = tx
            .iter()
            .zip(&sx)
            .zip(x)
            .map(|((t, s), xi)| tau * t + (1.0 - tau) * s - lambda * xi.powi(m1))
            .collect();
        h.push(x.iter().map(|v| v * v).sum::<f64>() - 1.0);
        Ok(h)
    }

    /// Jacobian of `H(tau, .)` with respect to `(lambda, x)`, `(n+1) x (n+1)`.
    pub fn jacobian(&self, tau: f64, u: &[f64]) -> Result<Matrix> {
        let (lambda, x) = self.split(u)?;
        let n = self.dim();
        let m = self.order();
        let jt = jacobian_of_tvp(self.target, x)?;
        let js = jacobian_of_tvp(self.start, x)?;
        let mut jac = Matrix::zeros(n + 1);
        let m1 = (m - 1) as i32;
        for i in 0..n {
            jac[(i, 0)] = -x[i].powi(m1);
            let (rt, rs) = (jt.row(i), js.row(i));
            let row = &mut jac.row_mut(i)[1..];
            for j in 0..n {
                row[j] = tau * rt[j] + (1.0 - tau) * rs[j];
            }
            // d/dx_i of lambda x_i^{m-1}
            row[i] -= lambda * (m - 1) as f64 * x[i].powi(m1 - 1);
        }
        for j in 0..n {
            jac[(n, j + 1)] = 2.0 * x[j];
        }
        Ok(jac)
    }

    /// `dH/dtau = ((T - S) x^{m-1}; 0)`.
    pub fn tau_derivative(&self, u: &[f64]) -> Result<Vec<f64>> {
        let (_, x) = self.split(u)?;
        let tx = tvp(self.target, x)?;
        let sx = tvp(self.start, x)?;
        let mut d: Vec<f64> = tx.iter().zip(&sx).map(|(t, s)| t - s).collect();
        d.push(0.0);
        Ok(d)
    }

    /// Path tangent `du/dtau` at `(tau, u)`.
    pub fn tangent(&self, tau: f64, u: &[f64]) -> Result<Vec<f64>> {
        let jac = self.jacobian(tau, u)?;
        let rhs: Vec<f64> = self.tau_derivative(u)?.into_iter().map(|v| -v).collect();
        LuFactorization::new(&jac).solve(&rhs)
    }

    /// Euler predictor: `u + dtau * g` with `g` the tangent at the state.
    pub fn predict(&self, state: &PathState, dtau: f64) -> Result<Vec<f64>> {
        let u = state.u();
        let g = self.tangent(state.tau, &u)?;
        Ok(u.iter().zip(&g).map(|(a, b)| a + dtau * b).collect())
    }

    /// Newton iteration on `H(tau, .)` from `u0` until `|H| <= tol`.
    pub fn newton_correct(
        &self,
        tau: f64,
        u0: &[f64],
        tol: f64,
        cap: usize,
    ) -> std::result::Result<NewtonOutcome, NewtonFailure> {
        let fail = |error, iters| NewtonFailure { error, iters };
        let mut u = u0.to_vec();
        let mut r = self.residual(tau, &u).map_err(|e| fail(e, 0))?;
        let mut rn = norm2(&r);
        let mut residuals = vec![rn];
        let mut iters = 0;
        while !(rn <= tol) {
            if iters >= cap || !rn.is_finite() {
                return Err(fail(Error::NewtonCapExceeded { iters, residual: rn }, iters));
            }
            let jac = self.jacobian(tau, &u).map_err(|e| fail(e, iters))?;
            let delta = LuFactorization::new(&jac)
                .solve(&r)
                .map_err(|e| fail(e, iters))?;
            for (ui, di) in u.iter_mut().zip(&delta) {
                *ui -= di;
            }
            iters += 1;
            r = self.residual(tau, &u).map_err(|e| fail(e, iters))?;
            rn = norm2(&r);
            residuals.push(rn);
        }
        Ok(NewtonOutcome { u, iters, residuals })
    }

    /// Follows the path from `state.tau` up to `tau_end`. Stops with
    /// `Err(())` when the step budget runs out or the step floor is reached
    /// without a successful correction.
    fn follow(
        &self,
        state: &mut PathState,
        tau_end: f64,
        config: &HomotopyConfig,
        log: &mut RunLog,
    ) -> std::result::Result<(), ()> {
        while state.tau < tau_end {
            if state.step_count + log.rejected >= config.max_steps {
                log.notes.push(format!("step limit {} reached at tau = {}", config.max_steps, state.tau));
                return Err(());
            }
            let (dtau, tau_next, last) = if state.tau + state.dtau >= tau_end {
                (tau_end - state.tau, tau_end, true)
            } else {
                (state.dtau, state.tau + state.dtau, false)
            };
            let corrected = self
                .predict(state, dtau)
                .map_err(|error| NewtonFailure { error, iters: 0 })
                .and_then(|ubar| self.newton_correct(tau_next, &ubar, config.eps1, config.newton_cap_path))
                .and_then(|out| {
                    if out.u[1..].iter().all(|&v| v > 0.0) {
                        Ok(out)
                    } else {
                        let iters = out.iters;
                        Err(NewtonFailure {
                            error: Error::Domain("corrected point left the positive orthant".into()),
                            iters,
                        })
                    }
                });
            match corrected {
                Ok(out) => {
                    state.accept(tau_next, out.u, out.iters);
                    log.path.push(PathSample {
                        tau: state.tau,
                        lambda: state.lambda,
                        min_x: state.x.iter().copied().fold(f64::INFINITY, f64::min),
                        dtau,
                        newton_iters: out.iters,
                    });
                    if !last {
                        state.dtau = update_step_size(state, out.iters, config);
                    }
                }
                Err(failure) => {
                    state.newton_total += failure.iters;
                    log.rejected += 1;
                    if dtau <= config.dtau_min {
                        log.notes.push(format!(
                            "correction failed at the minimum step from tau = {}: {}",
                            state.tau, failure.error
                        ));
                        return Err(());
                    }
                    state.dtau = (0.5 * dtau).max(config.dtau_min);
                }
            }
        }
        Ok(())
    }

    /// Euler jump from `state.tau` to 1 followed by Newton on `H(1, .) = Q`
    /// to `config.eps2`. Returns `(lambda_star, x_star)` with `x_star` unit.
    pub fn endgame(
        &self,
        state: &PathState,
        config: &HomotopyConfig,
    ) -> std::result::Result<(EigenPair, usize), NewtonFailure> {
        let ubar = self
            .predict(state, 1.0 - state.tau)
            .map_err(|error| NewtonFailure { error, iters: 0 })?;
        let out = self.newton_correct(1.0, &ubar, config.eps2, config.newton_cap_endgame)?;
        let iters = out.iters;
        let to_failure = |error| NewtonFailure { error, iters };
        if !out.u[1..].iter().all(|&v| v > 0.0) {
            return Err(to_failure(Error::Domain("endgame limit is not strictly positive".into())));
        }
        let pair = EigenPair::new(out.u[0], out.u[1..].to_vec()).map_err(to_failure)?;
        Ok((pair, iters))
    }
}

#[derive(Debug, Default)]
struct RunLog {
    path: Vec<PathSample>,
    rejected: usize,
    notes: Vec<String>,
}

/// Homotopy residual for explicit tensors; see [`Homotopy::residual`].
pub fn homotopy_residual(t: &Tensor, s: &Tensor, tau: f64, lambda: f64, x: &[f64]) -> Result<Vec<f64>> {
    Homotopy::new(t, s)?.residual(tau, &join(lambda, x))
}

/// Homotopy Jacobian for explicit tensors; see [`Homotopy::jacobian`].
pub fn homotopy_jacobian(t: &Tensor, s: &Tensor, tau: f64, lambda: f64, x: &[f64]) -> Result<Matrix> {
    Homotopy::new(t, s)?.jacobian(tau, &join(lambda, x))
}

/// `dH/dtau` for explicit tensors; see [`Homotopy::tau_derivative`].
pub fn tau_derivative(t: &Tensor, s: &Tensor, x: &[f64]) -> Result<Vec<f64>> {
    Homotopy::new(t, s)?.tau_derivative(&join(0.0, x))
}

fn join(lambda: f64, x: &[f64]) -> Vec<f64> {
    let mut u = Vec::with_capacity(x.len() + 1);
    u.push(lambda);
    u.extend_from_slice(x);
    u
}

/// Dominant eigenpair of an essentially nonnegative tensor with the
/// all-ones start vectors.
pub fn solve_dominant(a: &Tensor, config: &HomotopyConfig) -> Result<SolveReport> {
    let ones = vec![1.0; a.dim()];
    solve_dominant_with_start(a, config, &ones, &ones)
}

/// Dominant eigenpair using the rank-one start tensor built from `start_a`
/// and `start_b`.
pub fn solve_dominant_with_start(
    a: &Tensor,
    config: &HomotopyConfig,
    start_a: &[f64],
    start_b: &[f64],
) -> Result<SolveReport> {
    config.validate()?;
    a.check_vector(start_a)?;
    let (alpha, shifted) = alpha_shift(a)?;
    let start = rank_one_start(start_a, start_b, a.order())?;
    let pair0 = start_pair(start_a, start_b, a.order())?;

    let perturb_first = match config.assume {
        Assume::Auto => !weak_irreducibility_check(a),
        Assume::Irreducible => false,
        Assume::Reducible => true,
    };

    let clock = Instant::now();
    let mut log = RunLog::default();
    let (mut iter, mut nwtiter) = (0, 0);
    let mut attempt = |perturbed: bool, log: &mut RunLog| -> Result<Attempt> {
        let target = if perturbed {
            perturb(a, config.eps_perturb)?.add_unit(alpha)
        } else {
            shifted.clone()
        };
        let h = Homotopy::new(&target, &start)?;
        let mut state = PathState::start(&pair0, config.dtau0);
        let mut run = || -> (SolveStatus, Option<EigenPair>) {
            if h.follow(&mut state, config.beta, config, log).is_err() {
                return (SolveStatus::StepLimit, None);
            }
            let mut tau_end = config.beta;
            for round in 0..2 {
                iter += 1;
                match h.endgame(&state, config) {
                    Ok((pair, iters)) => {
                        state.newton_total += iters;
                        return (SolveStatus::Converged, Some(pair));
                    }
                    Err(failure) => {
                        state.newton_total += failure.iters;
                        log.notes.push(format!("endgame from tau = {tau_end} failed: {}", failure.error));
                        if round == 0 {
                            tau_end = 0.5 * (1.0 + tau_end);
                            if h.follow(&mut state, tau_end, config, log).is_err() {
                                return (SolveStatus::StepLimit, None);
                            }
                        }
                    }
                }
            }
            (SolveStatus::EndgameFailure, None)
        };
        let (status, pair) = run();
        iter += state.step_count;
        nwtiter += state.newton_total;
        let residual_norm = pair
            .as_ref()
            .map(|p| residual_q(&target, p.lambda, &p.x).map(|r| norm2(&r)))
            .transpose()?
            .unwrap_or(f64::NAN);
        Ok(Attempt {
            status,
            pair,
            residual_norm,
            last_x: state.x,
            last_lambda: state.lambda,
        })
    };

    let mut perturbed = perturb_first;
    let mut result = attempt(perturbed, &mut log)?;
    if result.status == SolveStatus::EndgameFailure && !perturbed && config.assume == Assume::Auto {
        log.notes.push("retrying with perturbation".into());
        perturbed = true;
        result = attempt(perturbed, &mut log)?;
    }
    let wall_time_s = clock.elapsed().as_secs_f64();

    let (lambda_star, eigen) = match result.pair {
        Some(p) => (p.lambda, EigenPair { lambda: p.lambda - alpha, x: p.x }),
        None => (
            result.last_lambda,
            EigenPair {
                lambda: result.last_lambda - alpha,
                x: result.last_x,
            },
        ),
    };
    Ok(SolveReport {
        eigen,
        lambda_star,
        alpha,
        eps: if perturbed { config.eps_perturb } else { 0.0 },
        residual_norm: result.residual_norm,
        iter,
        nwtiter,
        wall_time_s,
        perturbed,
        status: result.status,
        rejected_steps: log.rejected,
        path: log.path,
        notes: log.notes,
    })
}

struct Attempt {
    status: SolveStatus,
    pair: Option<EigenPair>,
    residual_norm: f64,
    last_x: Vec<f64>,
    last_lambda: f64,
}
