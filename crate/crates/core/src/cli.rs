//! Command-line front end: `solve`, `gen` and `compare`.
//!
//! Exit codes: 0 success, 1 non-convergence, 2 bad input, 3 I/O error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::compare::{run_comparison, Comparison};
use crate::error::Error;
use crate::generate::{random_essentially_nonnegative, InstanceSpec, GENERATOR};
use crate::homotopy::{solve_dominant_with_start, Assume, HomotopyConfig, SolveReport};
use crate::io::{TensorFile, TensorFormat};
use crate::power::{pta_solve_from, PtaConfig};
use crate::tensor::start_pair;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NOT_CONVERGED: i32 = 1;
pub const EXIT_BAD_INPUT: i32 = 2;
pub const EXIT_IO: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "perron", about = "Dominant eigenpairs of essentially nonnegative tensors")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve for the dominant eigenpair of a tensor file.
    Solve(SolveArgs),
    /// Write a seeded random essentially nonnegative tensor.
    Gen(GenArgs),
    /// Run both solvers on a batch of random instances.
    Compare(CompareArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Homotopy,
    Pta,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AssumeArg {
    Auto,
    Irreducible,
    Reducible,
}

impl From<AssumeArg> for Assume {
    fn from(a: AssumeArg) -> Self {
        match a {
            AssumeArg::Auto => Assume::Auto,
            AssumeArg::Irreducible => Assume::Irreducible,
            AssumeArg::Reducible => Assume::Reducible,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Dense,
    Coo,
}

#[derive(Debug, Clone, Args)]
pub struct SolverFlags {
    #[arg(long, default_value_t = 0.1)]
    pub dtau0: f64,
    #[arg(long, default_value_t = 1e-5)]
    pub eps1: f64,
    /// Endgame tolerance; also the PTA residual tolerance.
    #[arg(long, default_value_t = 1e-10)]
    pub eps2: f64,
    #[arg(long, default_value_t = 0.9999)]
    pub beta: f64,
    /// Constant added to every entry when perturbing.
    #[arg(long, default_value_t = 1e-9)]
    pub epsilon: f64,
    /// Cap on prediction-correction steps and on PTA iterations.
    #[arg(long, default_value_t = 50_000)]
    pub max_steps: usize,
    #[arg(long, default_value_t = 10)]
    pub newton_cap_path: usize,
    #[arg(long, default_value_t = 100)]
    pub newton_cap_endgame: usize,
    #[arg(long, default_value_t = 1e-6)]
    pub dtau_min: f64,
    #[arg(long, default_value_t = 0.4)]
    pub dtau_max: f64,
}

impl SolverFlags {
    pub fn homotopy(&self, assume: Assume) -> HomotopyConfig {
        HomotopyConfig {
            dtau0: self.dtau0,
            eps1: self.eps1,
            eps2: self.eps2,
            beta: self.beta,
            eps_perturb: self.epsilon,
            max_steps: self.max_steps,
            newton_cap_path: self.newton_cap_path,
            newton_cap_endgame: self.newton_cap_endgame,
            dtau_min: self.dtau_min,
            dtau_max: self.dtau_max,
            assume,
        }
    }

    pub fn pta(&self) -> PtaConfig {
        PtaConfig {
            tol: self.eps2,
            max_iter: self.max_steps,
            eps_perturb: self.epsilon,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct SolveArgs {
    pub path: PathBuf,
    #[arg(long, value_enum, default_value_t = Method::Homotopy)]
    pub method: Method,
    #[arg(long, value_enum, default_value_t = AssumeArg::Auto)]
    pub assume: AssumeArg,
    /// Comma-separated positive start vector `a` (default all ones).
    #[arg(long, value_delimiter = ',')]
    pub start_a: Option<Vec<f64>>,
    /// Comma-separated positive start vector `b` (default all ones).
    #[arg(long, value_delimiter = ',')]
    pub start_b: Option<Vec<f64>>,
    #[command(flatten)]
    pub solver: SolverFlags,
    /// Print machine-readable JSON instead of a table.
    #[arg(long)]
    pub json: bool,
    /// Also write the JSON report to this file.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct GenArgs {
    #[arg(short, long)]
    pub m: usize,
    #[arg(short, long)]
    pub n: usize,
    /// Scale every entry by 10^-d.
    #[arg(short, long, default_value_t = 0)]
    pub d: u32,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = FormatArg::Dense)]
    pub format: FormatArg,
    #[arg(short, long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct CompareArgs {
    #[arg(short, long)]
    pub m: usize,
    #[arg(short, long)]
    pub n: usize,
    #[arg(short, long)]
    pub d: u32,
    #[arg(long, default_value_t = 100)]
    pub count: usize,
    /// Instance k uses seed `seed + k`.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Perturbation gate for the homotopy solver. The baseline always perturbs.
    #[arg(long, value_enum, default_value_t = AssumeArg::Reducible)]
    pub assume: AssumeArg,
    #[command(flatten)]
    pub solver: SolverFlags,
    #[arg(long)]
    pub json: bool,
    /// Write the JSON records and summary to this file.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Exit code for a library error.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Io(_) => EXIT_IO,
        Error::NewtonCapExceeded { .. } | Error::SingularMatrix { .. } => EXIT_NOT_CONVERGED,
        _ => EXIT_BAD_INPUT,
    }
}

/// Parses `args` and runs the command, writing human or JSON output to `out`
/// and diagnostics to `err`. Returns the process exit code.
pub fn run_from<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { EXIT_BAD_INPUT } else { EXIT_OK };
        }
    };
    let result = match &cli.command {
        Command::Solve(a) => cmd_solve(a, out),
        Command::Gen(a) => cmd_gen(a, out),
        Command::Compare(a) => cmd_compare(a, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

#[derive(Debug, Serialize)]
struct SolveOutput<'a> {
    file: String,
    order: usize,
    dim: usize,
    homotopy: Option<&'a SolveReport>,
    pta: Option<&'a SolveReport>,
}

fn write_report_table(out: &mut dyn Write, name: &str, r: &SolveReport) -> std::io::Result<()> {
    writeln!(out, "[{name}]")?;
    writeln!(out, "  status      {:?}", r.status)?;
    writeln!(out, "  lambda(A)   {:.10}", r.eigen.lambda)?;
    let x: Vec<String> = r.eigen.x.iter().map(|v| format!("{v:.8}")).collect();
    writeln!(out, "  x           [{}]", x.join(", "))?;
    writeln!(out, "  residual    {:.3e}", r.residual_norm)?;
    writeln!(out, "  iter        {}", r.iter)?;
    writeln!(out, "  nwtiter     {}", r.nwtiter)?;
    writeln!(out, "  time (s)    {:.3}", r.wall_time_s)?;
    writeln!(out, "  alpha       {}", r.alpha)?;
    writeln!(out, "  perturbed   {}", r.perturbed)?;
    for note in &r.notes {
        writeln!(out, "  note        {note}")?;
    }
    Ok(())
}

pub fn cmd_solve(args: &SolveArgs, out: &mut dyn Write) -> crate::Result<i32> {
    let file = TensorFile::read(&args.path)?;
    let a = file.tensor;
    a.check_essentially_nonnegative()?;
    let n = a.dim();
    let start_a = args.start_a.clone().unwrap_or_else(|| vec![1.0; n]);
    let start_b = args.start_b.clone().unwrap_or_else(|| vec![1.0; n]);

    let homotopy = match args.method {
        Method::Homotopy | Method::Both => Some(solve_dominant_with_start(
            &a,
            &args.solver.homotopy(args.assume.into()),
            &start_a,
            &start_b,
        )?),
        Method::Pta => None,
    };
    let pta = match args.method {
        Method::Pta | Method::Both => {
            let x0 = start_pair(&start_a, &start_b, a.order())?.x;
            Some(pta_solve_from(&a, &args.solver.pta(), &x0)?.report)
        }
        Method::Homotopy => None,
    };

    let report = SolveOutput {
        file: args.path.display().to_string(),
        order: a.order(),
        dim: n,
        homotopy: homotopy.as_ref(),
        pta: pta.as_ref(),
    };
    let json = serde_json::to_string_pretty(&report).expect("reports serialize");
    if let Some(path) = &args.out {
        std::fs::write(path, &json)?;
    }
    if args.json {
        writeln!(out, "{json}")?;
    } else {
        writeln!(out, "tensor {} (order {}, dim {})", report.file, report.order, n)?;
        if let Some(r) = &homotopy {
            write_report_table(out, "homotopy", r)?;
        }
        if let Some(r) = &pta {
            write_report_table(out, "pta", r)?;
        }
    }
    let converged = homotopy.iter().chain(pta.iter()).all(|r| r.status.is_converged());
    Ok(if converged { EXIT_OK } else { EXIT_NOT_CONVERGED })
}

pub fn cmd_gen(args: &GenArgs, out: &mut dyn Write) -> crate::Result<i32> {
    let t = random_essentially_nonnegative(args.m, args.n, args.d, args.seed)?;
    let format = match args.format {
        FormatArg::Dense => TensorFormat::Dense,
        FormatArg::Coo => TensorFormat::Coo,
    };
    let spec = InstanceSpec {
        m: args.m,
        n: args.n,
        d: args.d,
        seed: args.seed,
    };
    let body = TensorFile::new(format, t).render();
    let header = format!(
        "# generator {GENERATOR} m {} n {} d {} seed {}\n",
        spec.m, spec.n, spec.d, spec.seed
    );
    std::fs::write(&args.out, header + &body)?;
    writeln!(out, "wrote {}", args.out.display())?;
    Ok(EXIT_OK)
}

fn write_comparison_table(out: &mut dyn Write, cmp: &Comparison) -> std::io::Result<()> {
    writeln!(
        out,
        "{:>6} {:>10} {:>6} {:>8} {:>10} {:>14} {:>10}",
        "seed", "solver", "iter", "nwtiter", "time", "lambda(A)", "status"
    )?;
    for r in &cmp.records {
        let status = match (&r.status, &r.error) {
            (_, Some(e)) => format!("error: {e}"),
            (Some(s), None) if r.capped() && r.solver == crate::compare::SolverKind::Pta => {
                format!(">{} ({s:?})", r.iter)
            }
            (Some(s), None) => format!("{s:?}"),
            (None, None) => "-".into(),
        };
        writeln!(
            out,
            "{:>6} {:>10} {:>6} {:>8} {:>10.4} {:>14.8e} {}",
            r.seed, r.solver.to_string(), r.iter, r.nwtiter, r.wall_time_s, r.lambda, status
        )?;
    }
    writeln!(out)?;
    writeln!(out, "(m,n)=({},{}) d={} count={}", cmp.m, cmp.n, cmp.d, cmp.count)?;
    let h = &cmp.homotopy;
    writeln!(
        out,
        "homotopy  Aiter {:.2}  Anwtiter {:.2}  Atime {:.4}  converged {}/{}",
        h.aiter, h.anwtiter, h.atime, h.converged, h.runs
    )?;
    let p = &cmp.pta;
    writeln!(
        out,
        "pta       Aiter {:.2}  Atime {:.4}  converged {}/{}  capped {}",
        p.aiter, p.atime, p.converged, p.runs, p.capped
    )
}

pub fn cmd_compare(args: &CompareArgs, out: &mut dyn Write) -> crate::Result<i32> {
    if args.count == 0 {
        return Err(Error::InvalidArgument("count must be at least 1".into()));
    }
    let hc = args.solver.homotopy(args.assume.into());
    hc.validate()?;
    let pc = args.solver.pta();
    pc.validate()?;
    if args.m < 2 || args.n < 1 {
        return Err(Error::InvalidShape(format!("need m >= 2 and n >= 1, got m={}, n={}", args.m, args.n)));
    }
    let cmp = run_comparison(args.m, args.n, args.d, args.count, args.seed, &hc, &pc);
    let json = serde_json::to_string_pretty(&cmp).expect("records serialize");
    if let Some(path) = &args.out {
        std::fs::write(path, &json)?;
    }
    if args.json {
        writeln!(out, "{json}")?;
    } else {
        write_comparison_table(out, &cmp)?;
    }
    Ok(EXIT_OK)
}
