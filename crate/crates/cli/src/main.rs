use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use synalg::eigen::operator_norm;
use synalg::{
    dyadic_expand, dyadic_residual, numerical_leq, read_matrix, resolution_of, run_suite_with, spectral_join, spectral_leq,
    spectral_meet, write_matrix, Effect, Error, OrderTag, SuiteConfig, SymMatrix, TolerancePolicy, VerificationReport,
};

/// Exit status when every check passes.
const EXIT_PASS: u8 = 0;
/// Exit status when a suite reports violations.
const EXIT_VIOLATIONS: u8 = 1;
/// Exit status for usage, input and numerical errors.
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(name = "synalg", version, about = "Spectral order and lattice computations on symmetric matrices")]
struct Cli {
    #[command(flatten)]
    tol: TolArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct TolArgs {
    /// Relative eigenvalue clustering tolerance.
    #[arg(long, global = true, default_value_t = TolerancePolicy::DEFAULT_TOL_EIG)]
    tol_eig: f64,
    /// Slack for positive semidefiniteness.
    #[arg(long, global = true, default_value_t = TolerancePolicy::DEFAULT_TOL_PSD)]
    tol_psd: f64,
    /// Slack for projection comparisons.
    #[arg(long, global = true, default_value_t = TolerancePolicy::DEFAULT_TOL_PROJ)]
    tol_proj: f64,
}

#[derive(Subcommand)]
enum Command {
    /// Print the breakpoints and projections of a matrix's spectral resolution.
    Resolve { matrix: PathBuf },
    /// Compare two matrices in the numerical or spectral order.
    Compare {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, value_enum)]
        order: CompareOrder,
    },
    /// Spectral meet of two matrices.
    Meet(LatticeArgs),
    /// Spectral join of two matrices.
    Join(LatticeArgs),
    /// Dyadic expansion of an effect into projections.
    Decompose {
        effect: PathBuf,
        #[arg(long)]
        steps: usize,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        trials: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, value_enum)]
        order: VerifyOrder,
        /// Also write the report to this file.
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

#[derive(Args)]
struct LatticeArgs {
    a: PathBuf,
    b: PathBuf,
    /// Only the spectral order has meets and joins for every pair.
    #[arg(long, value_enum, default_value = "spectral")]
    order: LatticeOrder,
    /// Write the result here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum CompareOrder {
    Numerical,
    Spectral,
}

#[derive(Clone, Copy, ValueEnum)]
enum LatticeOrder {
    Spectral,
}

#[derive(Clone, Copy, ValueEnum)]
enum VerifyOrder {
    Numerical,
    Spectral,
    Both,
}

impl VerifyOrder {
    fn tags(self) -> Vec<OrderTag> {
        match self {
            VerifyOrder::Numerical => vec![OrderTag::Synaptic],
            VerifyOrder::Spectral => vec![OrderTag::Spectral],
            VerifyOrder::Both => vec![OrderTag::Synaptic, OrderTag::Spectral],
        }
    }
}

#[derive(Serialize)]
struct Resolution {
    breakpoints: Vec<f64>,
    projections: Vec<SymMatrix>,
}

#[derive(Serialize)]
struct Decomposition {
    projections: Vec<SymMatrix>,
    residual_norm: f64,
}

fn load(path: &Path) -> Result<SymMatrix, Error> {
    let loaded = read_matrix(path)?;
    if loaded.asymmetry > 0.0 {
        eprintln!("warning: {} was symmetrized (asymmetry {:e})", path.display(), loaded.asymmetry);
    }
    Ok(loaded.matrix)
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("finite values serialize")
}

fn run(cli: Cli) -> Result<u8, Error> {
    let tol = TolerancePolicy {
        tol_eig: cli.tol.tol_eig,
        tol_psd: cli.tol.tol_psd,
        tol_proj: cli.tol.tol_proj,
        ..TolerancePolicy::default()
    }
    .validated()
    .ok_or_else(|| Error::InvalidArgument("tolerances must be nonnegative".into()))?;

    match cli.command {
        Command::Resolve { matrix } => {
            let r = resolution_of(&load(&matrix)?, &tol);
            let out = Resolution {
                breakpoints: r.breakpoints().to_vec(),
                projections: r.projections().iter().map(|p| p.matrix().clone()).collect(),
            };
            println!("{}", to_json(&out));
        }
        Command::Compare { a, b, order } => {
            let (a, b) = (load(&a)?, load(&b)?);
            let leq = match order {
                CompareOrder::Numerical => numerical_leq,
                CompareOrder::Spectral => spectral_leq,
            };
            let verdict = if leq(&a, &b, &tol)? {
                "leq"
            } else if leq(&b, &a, &tol)? {
                "geq"
            } else {
                "incomparable"
            };
            println!("{verdict}");
        }
        Command::Meet(args) => lattice(args, spectral_meet, &tol)?,
        Command::Join(args) => lattice(args, spectral_join, &tol)?,
        Command::Decompose { effect, steps } => {
            let e = Effect::try_new(load(&effect)?, &tol)?;
            let ps = dyadic_expand(&e, steps, &tol)?;
            let out = Decomposition {
                residual_norm: operator_norm(&dyadic_residual(&e, &ps)),
                projections: ps.into_iter().map(|p| p.into_matrix()).collect(),
            };
            println!("{}", to_json(&out));
        }
        Command::Verify { suite, dim, trials, seed, order, report } => {
            let config = SuiteConfig::with_tol(tol);
            let reports = order
                .tags()
                .into_iter()
                .map(|tag| run_suite_with(&suite, dim, trials, seed, tag, &config))
                .collect::<Result<Vec<VerificationReport>, _>>()?;
            let text = match order {
                VerifyOrder::Both => to_json(&reports),
                _ => to_json(&reports[0]),
            };
            println!("{text}");
            if let Some(path) = report {
                fs::write(&path, text + "\n").map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            }
            for r in reports.iter().filter(|r| !r.passed()) {
                eprintln!("{} ({}, dim {}): {} violations", r.suite, r.order, r.dim, r.total_violations());
            }
            if reports.iter().any(|r| !r.passed()) {
                return Ok(EXIT_VIOLATIONS);
            }
        }
    }
    Ok(EXIT_PASS)
}

fn lattice(
    args: LatticeArgs,
    op: fn(&SymMatrix, &SymMatrix, &TolerancePolicy) -> Result<SymMatrix, Error>,
    tol: &TolerancePolicy,
) -> Result<(), Error> {
    let LatticeOrder::Spectral = args.order;
    let result = op(&load(&args.a)?, &load(&args.b)?, tol)?;
    match args.out {
        Some(path) => write_matrix(&path, &result),
        None => {
            println!("{}", to_json(&result));
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
