//! Acceptance criteria 1-8. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails.

mod common;

use std::time::Instant;

use perron_homotopy::compare::run_comparison;
use perron_homotopy::generate::random_essentially_nonnegative;
use perron_homotopy::homotopy::homotopy_jacobian;
use perron_homotopy::linalg::{default_fd_step, fd_jacobian, norm2, rel_max_diff};
use perron_homotopy::tensor::{
    alpha_shift, perturb, rank_one_start, residual_q, semi_symmetrize, start_pair, tvp,
    weak_irreducibility_check,
};
use perron_homotopy::{
    convergence_rate_estimate, fixtures, pta_solve, solve_dominant, Assume, Homotopy, HomotopyConfig,
    PtaConfig, SolveStatus, Tensor,
};
use rand::Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(cond: bool, msg: String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg)
    }
}

fn reducible() -> HomotopyConfig {
    HomotopyConfig { assume: Assume::Reducible, ..HomotopyConfig::default() }
}

fn shifted_residual(a: &Tensor, rep: &perron_homotopy::SolveReport) -> f64 {
    let t = rep.shifted_tensor(a).unwrap();
    norm2(&residual_q(&t, rep.eigen.lambda + rep.alpha, &rep.eigen.x).unwrap())
}

fn criterion_1() -> Outcome {
    let a = fixtures::dense_mixed();
    let clock = Instant::now();
    let rep = solve_dominant(&a, &HomotopyConfig::default()).map_err(|e| e.to_string())?;
    let secs = clock.elapsed().as_secs_f64();
    let res = shifted_residual(&a, &rep);
    check(rep.status == SolveStatus::Converged, format!("status {:?}", rep.status))?;
    check((rep.eigen.lambda - 36.2757).abs() <= 5e-4, format!("lambda {}", rep.eigen.lambda))?;
    check(res <= 1e-10, format!("residual {res:e}"))?;
    check(rep.iter <= 30, format!("iter {}", rep.iter))?;
    check(secs < 5.0, format!("time {secs} s"))?;
    Ok(format!(
        "lambda = {:.6}, |Q| = {res:.1e}, iter = {}, nwtiter = {}, {secs:.4} s",
        rep.eigen.lambda, rep.iter, rep.nwtiter
    ))
}

fn criterion_2() -> Outcome {
    let a = fixtures::sparse_cycle();
    let rep = solve_dominant(&a, &HomotopyConfig::default()).map_err(|e| e.to_string())?;
    let res = shifted_residual(&a, &rep);
    check((rep.eigen.lambda - 1.0).abs() <= 1e-8, format!("lambda {}", rep.eigen.lambda))?;
    check(rep.eigen.x.iter().all(|&v| v > 0.0), format!("x {:?}", rep.eigen.x))?;
    check((norm2(&rep.eigen.x) - 1.0).abs() <= 1e-12, "x is not unit".into())?;
    check(res <= 1e-10, format!("residual {res:e}"))?;
    let want = [0.5, 0.5, std::f64::consts::FRAC_1_SQRT_2];
    let dx = rep.eigen.x.iter().zip(want).map(|(u, v)| (u - v).abs()).fold(0.0, f64::max);
    check(dx <= 1e-8, format!("x {:?}", rep.eigen.x))?;
    Ok(format!("lambda = {:.12}, x = {:?}, |Q| = {res:.1e}", rep.eigen.lambda, rep.eigen.x))
}

fn criterion_3() -> Outcome {
    let (m, n) = (3, 100);
    let a = random_essentially_nonnegative(m, n, 0, 2024).map_err(|e| e.to_string())?;
    let clock = Instant::now();
    let rep = solve_dominant(&a, &HomotopyConfig::default()).map_err(|e| e.to_string())?;
    let secs = clock.elapsed().as_secs_f64();
    let res = shifted_residual(&a, &rep);
    let scale = (n as f64).powi(m as i32 - 1);
    check(rep.status == SolveStatus::Converged, format!("status {:?}", rep.status))?;
    check(res <= 1e-10, format!("residual {res:e}"))?;
    check(rep.iter <= 30, format!("iter {}", rep.iter))?;
    check(secs < 60.0, format!("time {secs} s"))?;
    let ratio = rep.eigen.lambda / scale;
    check((0.3..=0.7).contains(&ratio), format!("lambda / n^(m-1) = {ratio}"))?;
    // The baseline always works on A_eps; compare against the homotopy on the same tensor.
    let pta = pta_solve(&a, &PtaConfig::default()).map_err(|e| e.to_string())?;
    let same = solve_dominant(&a, &reducible()).map_err(|e| e.to_string())?;
    check(pta.status == SolveStatus::Converged, format!("pta {:?}", pta.status))?;
    let diff = (pta.eigen.lambda - same.eigen.lambda).abs();
    check(diff <= 1e-6, format!("pta vs homotopy on A_eps differ by {diff:e}"))?;
    Ok(format!(
        "lambda = {:.6} ({ratio:.4} n^2), |Q| = {res:.1e}, iter = {}, {secs:.2} s; pta iter = {}, |pta - homotopy(A_eps)| = {diff:.1e}, |pta - homotopy(A)| = {:.1e}",
        rep.eigen.lambda,
        rep.iter,
        pta.iter,
        (pta.eigen.lambda - rep.eigen.lambda).abs()
    ))
}

fn criterion_4() -> Outcome {
    let (hc, pc) = (reducible(), PtaConfig::default());
    let clock = Instant::now();
    let d3 = run_comparison(3, 10, 3, 20, 3000, &hc, &pc);
    let d6 = run_comparison(3, 10, 6, 20, 6000, &hc, &pc);
    let secs = clock.elapsed().as_secs_f64();
    check(d3.pta.converged == 20, format!("d=3: pta converged {}/20", d3.pta.converged))?;
    check((100.0..=5000.0).contains(&d3.pta.aiter), format!("d=3: pta Aiter {}", d3.pta.aiter))?;
    for (h, _) in d3.pairs() {
        check(h.converged() && h.iter <= 30, format!("d=3 seed {}: homotopy {:?} iter {}", h.seed, h.status, h.iter))?;
    }
    for (h, p) in d6.pairs() {
        check(p.capped() && p.iter == 50_000, format!("d=6 seed {}: pta {:?} iter {}", p.seed, p.status, p.iter))?;
        check(
            h.converged() && h.residual_norm <= 1e-10,
            format!("d=6 seed {}: homotopy {:?} residual {:e}", h.seed, h.status, h.residual_norm),
        )?;
    }
    check(secs < 600.0, format!("time {secs} s"))?;
    Ok(format!(
        "d=3: pta Aiter = {:.1}, homotopy Aiter = {:.2}; d=6: pta capped {}/20, homotopy converged {}/20, Aiter = {:.2}; {secs:.1} s",
        d3.pta.aiter, d3.homotopy.aiter, d6.pta.capped, d6.homotopy.converged, d6.homotopy.aiter
    ))
}

fn criterion_5() -> Outcome {
    let mut worst: f64 = 0.0;
    for seed in 0..50 {
        let a = random_essentially_nonnegative(2, 5, 0, seed).map_err(|e| e.to_string())?;
        let rep = solve_dominant(&a, &HomotopyConfig::default()).map_err(|e| e.to_string())?;
        let (alpha, _) = alpha_shift(&a).unwrap();
        let oracle = common::matrix_power_iteration(&a, alpha);
        let diff = (rep.eigen.lambda - oracle).abs();
        worst = worst.max(diff);
        check(diff <= 1e-8, format!("seed {seed}: {} vs {oracle}", rep.eigen.lambda))?;
    }
    let small = Tensor::new(2, 2, vec![-1.0, 2.0, 3.0, -2.0]).unwrap();
    let rep = solve_dominant(&small, &HomotopyConfig::default()).map_err(|e| e.to_string())?;
    let r = std::f64::consts::FRAC_1_SQRT_2;
    check((rep.eigen.lambda - 1.0).abs() <= 1e-10, format!("2x2 lambda {}", rep.eigen.lambda))?;
    check(
        rep.eigen.x.iter().all(|v| (v - r).abs() <= 1e-10),
        format!("2x2 x {:?}", rep.eigen.x),
    )?;
    Ok(format!("50 matrices, max |lambda - power| = {worst:.1e}; [[-1,2],[3,-2]] -> {:.12}", rep.eigen.lambda))
}

fn criterion_6() -> Outcome {
    let mut rng = common::rng(606);
    let cfg = HomotopyConfig::default();

    // Start pair.
    let mut start_worst: f64 = 0.0;
    for _ in 0..20 {
        let (m, n) = (rng.gen_range(2..5), rng.gen_range(1..7));
        let va = common::positive_vector(&mut rng, n);
        let vb = common::positive_vector(&mut rng, n);
        let s = rank_one_start(&va, &vb, m).unwrap();
        let p = start_pair(&va, &vb, m).unwrap();
        let res = norm2(&residual_q(&s, p.lambda, &p.x).unwrap()) / p.lambda.max(1.0);
        start_worst = start_worst.max(res);
    }
    check(start_worst <= 1e-12, format!("start pair residual {start_worst:e}"))?;

    // Semi-symmetrization.
    let mut sym_worst: f64 = 0.0;
    for seed in 0..20 {
        let (m, n) = (rng.gen_range(2..5), rng.gen_range(1..6));
        let a = random_essentially_nonnegative(m, n, 0, seed).unwrap();
        let x: Vec<f64> = (0..n).map(|_| rng.gen_range(-2.0..2.0)).collect();
        let (u, v) = (tvp(&semi_symmetrize(&a), &x).unwrap(), tvp(&a, &x).unwrap());
        let scale = v.iter().fold(1e-300_f64, |s, q| s.max(q.abs()));
        let rel = u.iter().zip(&v).map(|(p, q)| (p - q).abs()).fold(0.0, f64::max) / scale;
        sym_worst = sym_worst.max(rel);
    }
    check(sym_worst <= 1e-12, format!("semi-symmetrization {sym_worst:e}"))?;

    // Jacobian against central differences at 20 random points.
    let mut fd_worst: f64 = 0.0;
    for seed in 0..20 {
        let (m, n) = (rng.gen_range(2..5), rng.gen_range(1..6));
        let (_, t) = alpha_shift(&random_essentially_nonnegative(m, n, 0, seed).unwrap()).unwrap();
        let s = rank_one_start(&common::positive_vector(&mut rng, n), &common::positive_vector(&mut rng, n), m).unwrap();
        let tau = rng.gen_range(0.0..1.0);
        let mut u = vec![rng.gen_range(0.5..5.0)];
        u.extend(common::positive_vector(&mut rng, n));
        let h = Homotopy::new(&t, &s).unwrap();
        let j = homotopy_jacobian(&t, &s, tau, u[0], &u[1..]).unwrap();
        let fd = fd_jacobian(|v| h.residual(tau, v).unwrap(), &u, default_fd_step(&u)).unwrap();
        fd_worst = fd_worst.max(rel_max_diff(&j, &fd));
    }
    check(fd_worst <= 1e-6, format!("jacobian vs fd {fd_worst:e}"))?;

    // Shift and scale covariance, path positivity.
    let mut cov_worst: f64 = 0.0;
    let mut min_path_x = f64::INFINITY;
    for seed in 0..20 {
        let a = random_essentially_nonnegative(3, 4, 0, 100 + seed).unwrap();
        let base = solve_dominant(&a, &cfg).map_err(|e| e.to_string())?;
        let c = rng.gen_range(-3.0..3.0);
        let t = rng.gen_range(0.1..10.0);
        let l_shift = solve_dominant(&a.add_unit(c), &cfg).unwrap().eigen.lambda;
        let l_scale = solve_dominant(&a.scaled(t), &cfg).unwrap().eigen.lambda;
        cov_worst = cov_worst
            .max((l_shift - (base.eigen.lambda + c)).abs())
            .max((l_scale - t * base.eigen.lambda).abs());
        for s in &base.path {
            min_path_x = min_path_x.min(s.min_x);
        }
        check(!base.path.is_empty(), "empty path".into())?;
    }
    check(cov_worst <= 1e-8, format!("covariance {cov_worst:e}"))?;
    check(min_path_x > 0.0, format!("path min x {min_path_x:e}"))?;

    // Strict monotonicity: A <= B, A != B, B irreducible.
    let mut mono_gap = f64::INFINITY;
    for seed in 0..20 {
        let a = random_essentially_nonnegative(3, 4, 0, 200 + seed).unwrap();
        let bump = Tensor::from_fn(3, 4, |_| if rng.gen_bool(0.2) { rng.gen_range(0.0..0.5) } else { 0.0 }).unwrap();
        let mut bump = bump;
        bump.set(&[rng.gen_range(0..4), rng.gen_range(0..4), rng.gen_range(0..4)], 0.1).unwrap();
        let b = a.add_scaled(1.0, &bump).unwrap();
        check(weak_irreducibility_check(&b), "B reducible".into())?;
        let la = solve_dominant(&a, &cfg).unwrap().eigen.lambda;
        let lb = solve_dominant(&b, &cfg).unwrap().eigen.lambda;
        mono_gap = mono_gap.min(lb - la);
    }
    check(mono_gap > 0.0, format!("monotonicity gap {mono_gap:e}"))?;

    // Perturbation bound on symmetric instances.
    let exact = HomotopyConfig { assume: Assume::Irreducible, ..HomotopyConfig::default() };
    let (m, n) = (3, 3);
    let bound_scale = (n as f64).powi(m as i32 - 1);
    let mut bound_worst = f64::NEG_INFINITY;
    for seed in 0..10 {
        let a = common::random_symmetric(m, n, 300 + seed);
        let l = solve_dominant(&a, &exact).unwrap().eigen.lambda;
        for eps in [1e-3, 1e-5] {
            let le = solve_dominant(&perturb(&a, eps).unwrap(), &exact).unwrap().eigen.lambda;
            let gap = le - l;
            check(
                gap >= -1e-12 && gap <= eps * bound_scale + 1e-12,
                format!("seed {seed} eps {eps}: gap {gap:e}"),
            )?;
            bound_worst = bound_worst.max(gap / (eps * bound_scale));
        }
    }

    Ok(format!(
        "start {start_worst:.1e}, semi-sym {sym_worst:.1e}, fd {fd_worst:.1e}, covariance {cov_worst:.1e}, path min x {min_path_x:.2e}, min monotone gap {mono_gap:.2e}, max gap/(eps n^2) {bound_worst:.3}"
    ))
}

fn criterion_7() -> Outcome {
    let mut rng = common::rng(707);
    let mut worst: f64 = 0.0;
    for _ in 0..10 {
        let first = Tensor::from_fn(3, 2, |_| rng.gen_range(0.05..1.0)).unwrap();
        let second = Tensor::from_fn(3, 2, |_| 2.0 * rng.gen_range(0.05..1.0)).unwrap();
        let a = common::block_diagonal(&first, &second);
        check(!weak_irreducibility_check(&a), "block tensor reported irreducible".into())?;
        let target = common::block_eigenvalue_bisection(&first).max(common::block_eigenvalue_bisection(&second));
        let rep = solve_dominant(&a, &HomotopyConfig::default()).map_err(|e| e.to_string())?;
        check(rep.perturbed && rep.eps == 1e-9, format!("perturbed {} eps {}", rep.perturbed, rep.eps))?;
        check(rep.status == SolveStatus::Converged, format!("status {:?}", rep.status))?;
        let diff = (rep.eigen.lambda - target).abs();
        worst = worst.max(diff);
        check(diff <= 1e-6, format!("lambda {} vs block {target}", rep.eigen.lambda))?;
    }
    Ok(format!("10 block tensors, max |lambda - larger block| = {worst:.1e}"))
}

fn criterion_8() -> Outcome {
    let pc = PtaConfig::default();
    let a0 = random_essentially_nonnegative(3, 10, 0, 8).unwrap();
    let (_, t0) = alpha_shift(&a0).unwrap();
    let r0 = convergence_rate_estimate(&t0).unwrap();
    let mut homog_worst: f64 = 0.0;
    let mut actual = Vec::new();
    let mut iters = Vec::new();
    for d in 0..=6u32 {
        let scale = 10f64.powi(-(d as i32));
        let r = convergence_rate_estimate(&t0.scaled(scale)).unwrap();
        homog_worst = homog_worst.max((r - r0).abs());
        let a = a0.scaled(scale);
        let (alpha, _) = alpha_shift(&a).unwrap();
        let t = perturb(&a, pc.eps_perturb).unwrap().add_unit(alpha);
        actual.push(convergence_rate_estimate(&t).unwrap());
        if (3..=6).contains(&d) {
            iters.push(run_comparison(3, 10, d, 20, 1000 * d as u64, &reducible(), &pc).pta.aiter);
        }
    }
    check(homog_worst <= 1e-12, format!("rate not scale invariant: {homog_worst:e}"))?;
    check(actual.windows(2).all(|w| w[1] > w[0]), format!("rates {actual:?}"))?;
    check(iters.windows(2).all(|w| w[1] > w[0]), format!("pta Aiter {iters:?}"))?;
    let rates: Vec<String> = actual.iter().map(|r| format!("{r:.8}")).collect();
    let aiter: Vec<String> = iters.iter().map(|v| format!("{v:.0}")).collect();
    Ok(format!(
        "scaled-T0 drift {homog_worst:.1e}; rate of A_eps + alpha I for d = 0..6: [{}]; pta Aiter d = 3..6: [{}]",
        rates.join(", "),
        aiter.join(", ")
    ))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("dense fixture eigenpair", criterion_1),
        ("sparse fixture eigenpair", criterion_2),
        ("random (3,100) scale check", criterion_3),
        ("scaled (3,10) comparison", criterion_4),
        ("matrix oracle", criterion_5),
        ("invariant suite", criterion_6),
        ("reducible block tensor", criterion_7),
        ("rate diagnostic", criterion_8),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let clock = Instant::now();
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let secs = clock.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {}: {name} [{secs:.2} s] {detail}", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {}: {name} [{secs:.2} s] {why}", k + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
