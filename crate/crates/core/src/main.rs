use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use sbpcpr::advection::JacobianStrategy;
use sbpcpr::burgers::CorrectionMode;
use sbpcpr::harness::{
    ops_check, run_advection, run_burgers, write_outputs, Classification, ExperimentConfig, RunResult, EXIT_BLOWUP,
    EXIT_INVALID_CONFIG, EXIT_INVARIANT_FAILURE, EXIT_OK,
};
use sbpcpr::mesh::{GridKind, Mapping};
use sbpcpr::{BasisKind, Error, FluxKind};

/// SBP operators in the CPR framework: operator checks and the Burgers and
/// linear advection experiments.
#[derive(Parser)]
#[command(name = "sbpcpr", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build an operator set, check its invariants and print M, D, R, B, V.
    OpsCheck {
        #[arg(long)]
        basis: BasisKind,
        #[arg(long)]
        p: usize,
    },
    /// Burgers' equation with periodic boundaries on [0, 2].
    Burgers(BurgersArgs),
    /// Linear advection with periodic boundaries on [-1, 1].
    Advection(AdvectionArgs),
}

#[derive(Args)]
struct Common {
    #[arg(long)]
    basis: Option<BasisKind>,
    #[arg(long)]
    p: Option<usize>,
    #[arg(long)]
    elements: Option<usize>,
    #[arg(long)]
    t_final: Option<f64>,
    #[arg(long)]
    steps: Option<usize>,
    /// Record diagnostics every N steps.
    #[arg(long)]
    sample_every: Option<usize>,
    /// Output prefix for `<prefix>_diag.csv` and `<prefix>_solution.csv`.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BurgersArgs {
    /// Start from the Figure 1 setup with the given basis.
    #[arg(long, value_name = "BASIS")]
    paper_fig1: Option<BasisKind>,
    #[command(flatten)]
    common: Common,
    #[arg(long)]
    flux: Option<FluxKind>,
    /// Correction terms: both, div, res or none.
    #[arg(long)]
    corrections: Option<CorrectionMode>,
}

#[derive(Args)]
struct AdvectionArgs {
    /// Start from a Figure 2 setup (a-e).
    #[arg(long, value_name = "CASE")]
    paper_fig2: Option<char>,
    #[command(flatten)]
    common: Common,
    #[arg(long)]
    grid: Option<GridKind>,
    #[arg(long)]
    mapping: Option<Mapping>,
    #[arg(long)]
    jacobian: Option<JacobianStrategy>,
}

fn apply_common(cfg: &mut ExperimentConfig, c: Common) {
    if let Some(v) = c.basis {
        cfg.basis = v;
    }
    if let Some(v) = c.p {
        cfg.p = v;
    }
    if let Some(v) = c.elements {
        cfg.elements = v;
    }
    if let Some(v) = c.t_final {
        cfg.t_final = v;
    }
    if let Some(v) = c.steps {
        cfg.steps = v;
    }
    if let Some(v) = c.sample_every {
        cfg.sample_every = v;
    }
    if c.out.is_some() {
        cfg.out = c.out;
    }
}

fn burgers_config(args: BurgersArgs) -> Result<ExperimentConfig, Error> {
    let basis = args.paper_fig1.or(args.common.basis).ok_or_else(|| {
        Error::InvalidConfig("--basis is required unless --paper-fig1 is given".into())
    })?;
    let mut cfg = ExperimentConfig::burgers_fig1(basis);
    apply_common(&mut cfg, args.common);
    if let Some(v) = args.flux {
        cfg.flux = v;
    }
    if let Some(v) = args.corrections {
        cfg.corrections = v;
    }
    Ok(cfg)
}

fn advection_config(args: AdvectionArgs) -> Result<ExperimentConfig, Error> {
    let case = match args.paper_fig2 {
        Some(c) => c,
        None if args.common.basis.is_some() => 'a',
        None => return Err(Error::InvalidConfig("--basis is required unless --paper-fig2 is given".into())),
    };
    let mut cfg = ExperimentConfig::advection_fig2(case)?;
    if args.paper_fig2.is_none() && args.jacobian.is_none() {
        let basis = args.common.basis.unwrap_or(cfg.basis);
        cfg.jacobian = if basis.is_nodal() {
            JacobianStrategy::NodalDiagonal
        } else {
            JacobianStrategy::ViaGaussTransform
        };
    }
    apply_common(&mut cfg, args.common);
    if let Some(v) = args.grid {
        cfg.grid = v;
    }
    if let Some(v) = args.mapping {
        cfg.mapping = v;
    }
    if let Some(v) = args.jacobian {
        cfg.jacobian = v;
    }
    Ok(cfg)
}

fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::InvalidConfig(_) | Error::InvalidDegree { .. } | Error::NotNodal(_) | Error::FluxMismatch(_) | Error::InvalidMesh(_) => {
            EXIT_INVALID_CONFIG
        }
        Error::Io(_) => 1,
        _ => EXIT_INVARIANT_FAILURE,
    }
}

fn report_run(cfg: &ExperimentConfig, run: &RunResult) -> Result<i32, Error> {
    let series = run.series();
    let first = series.samples.first().expect("initial sample");
    let last = series.samples.last().expect("initial sample");
    println!("basis {} p = {} elements = {}", cfg.basis, cfg.p, cfg.elements);
    println!("steps {} dt = {:e}", run.outcome.steps_taken, cfg.integration().dt());
    println!("momentum t={:.6} {:.16e}", first.t, first.momentum);
    println!("momentum t={:.6} {:.16e}", last.t, last.momentum);
    println!("energy   t={:.6} {:.16e}", first.t, first.energy);
    println!("energy   t={:.6} {:.16e}", last.t, last.energy);
    let prefix = cfg.output_prefix();
    let (diag, sol) = write_outputs(&prefix, series, &run.snapshots())?;
    println!("wrote {}", diag.display());
    println!("wrote {}", sol.display());
    let class = run.classification();
    println!("{class}");
    Ok(match class {
        Classification::Stable => EXIT_OK,
        Classification::Blowup { .. } => EXIT_BLOWUP,
    })
}

fn run(cli: Cli) -> Result<i32, Error> {
    match cli.command {
        Command::OpsCheck { basis, p } => {
            let report = ops_check(basis, p)?;
            print!("{report}");
            if report.passed() {
                println!("PASS");
                Ok(EXIT_OK)
            } else {
                println!("FAIL");
                Ok(EXIT_INVARIANT_FAILURE)
            }
        }
        Command::Burgers(args) => {
            let cfg = burgers_config(args)?;
            let run = run_burgers(&cfg)?;
            report_run(&cfg, &run)
        }
        Command::Advection(args) => {
            let cfg = advection_config(args)?;
            let run = run_advection(&cfg)?;
            report_run(&cfg, &run)
        }
    }
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            exit_code_for(&err)
        }
    };
    ExitCode::from(code as u8)
}
