//! `shrira` — pseudospectral laboratory for the two-dimensional
//! Benjamin–Ono (Shrira) equation on the torus.
//!
//! Exit codes: 0 success, 1 probe ceiling breach, 2 usage/config error,
//! 3 numerical failure (blow-up or resolution error).

mod ic;
mod rundir;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use shrira_core::grid::GridSpec;
use shrira_core::solver::{self, Integrator, SolveConfig};
use shrira_core::{io as spf2, CoreError};
use shrira_lab::config::Ceilings;
use shrira_lab::{bona_smith, energy, inequalities, kernel, strichartz, LabError};

use rundir::{ReportFormat, RunDir};

#[derive(Parser)]
#[command(name = "shrira", version, about)]
struct Cli {
    /// Base directory for timestamped run directories.
    #[arg(long, default_value = "runs", global = true)]
    output_dir: PathBuf,

    /// Report format(s) written into the run directory.
    #[arg(long, value_enum, default_value = "json", global = true)]
    report_format: ReportFormat,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Integrate the full equation from an initial condition.
    Solve(SolveArgs),
    /// Dispersive estimate per dyadic shell (or the global [0,1] version).
    ProbeStrichartz(StrichartzArgs),
    /// Oscillatory kernel-sum sweep over the dyadic (k, j) lattice.
    ProbeKernel(KernelArgs),
    /// Commutator estimate sweep.
    ProbeCommutator(InequalityArgs),
    /// Product estimate sweep.
    ProbeProduct(InequalityArgs),
    /// Energy inequality along a solver trajectory.
    ProbeEnergy(TrajectoryProbeArgs),
    /// Bootstrap quantity g(T) and its constant along a trajectory.
    ProbeGt(TrajectoryProbeArgs),
    /// Short-time existence package at T = (A_s·norm + 1)^{-2}.
    ProbeLemma52(Lemma52Args),
    /// Regularization experiments (convergence or flow continuity).
    BonaSmith(BonaSmithArgs),
    /// Rational approximation with 1 <= q <= Q and |alpha - a/q| < 1/(qQ).
    Dirichlet(DirichletArgs),
    /// Quadratic exponential sum and its inequality bound.
    Weyl(WeylArgs),
    /// Poisson-summation check on a Schwartz family.
    Poisson(PoissonArgs),
    /// Norms and metadata of an SPF2 field file.
    FieldInfo(FieldInfoArgs),
}

#[derive(Args, Serialize)]
struct SolveArgs {
    /// Modes per side (power of two).
    #[arg(long, default_value_t = 128)]
    grid: u32,
    #[arg(long, default_value_t = GridSpec::DEFAULT_OVERSAMPLE)]
    oversample: u32,
    #[arg(long)]
    dt: f64,
    /// Horizon T.
    #[arg(long = "T")]
    horizon: f64,
    /// Initial condition: random:s=..:seed=.. | modes:(m,n)=.. | file:path
    #[arg(long)]
    ic: String,
    #[arg(long, value_parser = parse_integrator, default_value = "ifrk4")]
    #[serde(serialize_with = "serialize_integrator")]
    integrator: Integrator,
    /// Disable 2/3-rule dealiasing of the quadratic term.
    #[arg(long)]
    no_dealias: bool,
    /// Sobolev index tracked in the diagnostics.
    #[arg(long, default_value_t = 2.0)]
    s: f64,
    #[arg(long, default_value_t = 1)]
    record_stride: usize,
    #[arg(long, default_value_t = 0.5)]
    cfl: f64,
    #[arg(long, default_value_t = 1e6)]
    blowup_ceiling: f64,
    /// Skip writing SPF2 snapshots of the recorded states.
    #[arg(long)]
    no_snapshots: bool,
}

#[derive(Args, Serialize)]
struct StrichartzArgs {
    #[arg(long, default_value_t = 256)]
    grid: u32,
    /// Largest dyadic shell in the scan.
    #[arg(long = "Nmax", default_value_t = 64)]
    n_max: u64,
    #[arg(long, default_value_t = 50)]
    samples: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Normalization exponent for the fitted constant.
    #[arg(long, default_value_t = 0.35)]
    alpha: f64,
    /// Probe the global L²([0,1]; L^∞) estimate instead of the shell scan.
    #[arg(long)]
    global: bool,
    /// Sobolev index of the right-hand side (global probe).
    #[arg(long, default_value_t = 0.8)]
    s: f64,
    /// Spectral decay of the sampled data (global probe).
    #[arg(long, default_value_t = 4.0)]
    sigma: f64,
}

#[derive(Args, Serialize)]
struct KernelArgs {
    #[arg(long, default_value_t = 6)]
    kmax: u32,
    #[arg(long, default_value_t = 12)]
    jmax: u32,
    #[arg(long, default_value_t = 20)]
    samples: usize,
    #[arg(long, default_value_t = 0.1)]
    eps: f64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

#[derive(Args, Serialize)]
struct InequalityArgs {
    #[arg(long, default_value_t = 64)]
    grid: u32,
    #[arg(long, default_value_t = 1.75)]
    s: f64,
    #[arg(long, default_value_t = 3.0)]
    sigma: f64,
    #[arg(long, default_value_t = 100)]
    samples: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

#[derive(Args, Serialize)]
struct TrajectoryProbeArgs {
    #[arg(long, default_value_t = 64)]
    grid: u32,
    #[arg(long, default_value = "random:s=3:seed=1:norm=0.5:norm_s=2")]
    ic: String,
    #[arg(long, default_value_t = 1e-3)]
    dt: f64,
    #[arg(long = "T", default_value_t = 0.05)]
    horizon: f64,
    /// Sobolev index of the probed estimate.
    #[arg(long, default_value_t = 2.0)]
    s: f64,
    /// Disable the nonlinear term (probe the free flow).
    #[arg(long)]
    linear_only: bool,
}

#[derive(Args, Serialize)]
struct Lemma52Args {
    #[arg(long, default_value_t = 64)]
    grid: u32,
    #[arg(long, default_value = "random:s=3:seed=1:norm=0.5:norm_s=2")]
    ic: String,
    #[arg(long, default_value_t = 1e-3)]
    dt: f64,
    #[arg(long, default_value_t = 2.0)]
    s: f64,
    /// The constant A_s in T = (A_s·‖w₀‖_{H^s} + 1)^{-2}.
    #[arg(long = "As", default_value_t = 10.0)]
    a_s: f64,
}

#[derive(Args, Serialize)]
struct BonaSmithArgs {
    #[arg(long, value_parser = ["convergence", "flow"], default_value = "convergence")]
    experiment: String,
    #[arg(long, default_value_t = 256)]
    grid: u32,
    /// Target Sobolev index of the convergence measurement.
    #[arg(long, default_value_t = 1.75)]
    s: f64,
    /// Decay index of the synthetic data.
    #[arg(long, default_value_t = 2.5)]
    s_data: f64,
    /// Mollification scales, comma-separated.
    #[arg(long, default_value = "8,12,16,24,32,48,64")]
    n_list: String,
    /// Data for the experiment (default: the synthetic decay field for
    /// `convergence`, a random field for `flow`).
    #[arg(long)]
    ic: Option<String>,
    /// Perturbation sizes for the flow experiment, comma-separated.
    #[arg(long, default_value = "1e-1,1e-2,1e-3,1e-4")]
    deltas: String,
    #[arg(long, default_value_t = 2e-3)]
    dt: f64,
    #[arg(long = "T", default_value_t = 0.04)]
    horizon: f64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

#[derive(Args, Serialize)]
struct DirichletArgs {
    #[arg(long)]
    alpha: f64,
    #[arg(long = "Q")]
    q_max: f64,
}

#[derive(Args, Serialize)]
struct WeylArgs {
    #[arg(long)]
    alpha: f64,
    #[arg(long, default_value_t = 0.0)]
    beta: f64,
    #[arg(long = "N")]
    n_terms: u64,
    #[arg(long, default_value_t = 0.05)]
    eps: f64,
    /// Dirichlet bound Q for the leading coefficient (default: N).
    #[arg(long = "Q")]
    q_max: Option<f64>,
    /// Also evaluate at N, 2N, 4N, ... for this many octaves.
    #[arg(long, default_value_t = 0)]
    octaves: u32,
}

#[derive(Args, Serialize)]
struct PoissonArgs {
    #[arg(long, value_parser = ["gaussian", "bump-convolved"], default_value = "gaussian")]
    family: String,
    #[arg(long, default_value_t = 1.0)]
    sigma: f64,
    #[arg(long, default_value_t = 20)]
    truncation: u32,
}

#[derive(Args, Serialize)]
struct FieldInfoArgs {
    #[arg(long)]
    input: PathBuf,
    /// Export the dyadic shell decomposition as SPF2 files.
    #[arg(long)]
    export_shells: bool,
}

fn parse_integrator(s: &str) -> Result<Integrator, String> {
    match s.to_ascii_lowercase().as_str() {
        "ifrk4" => Ok(Integrator::Ifrk4),
        "strang" => Ok(Integrator::Strang),
        other => Err(format!("unknown integrator {other:?} (ifrk4 | strang)")),
    }
}

fn serialize_integrator<S: serde::Serializer>(i: &Integrator, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(match i {
        Integrator::Ifrk4 => "ifrk4",
        Integrator::Strang => "strang",
    })
}

/// Failures mapped to exit codes 2 (usage) and 3 (numerical).
enum CliError {
    Usage(String),
    Numerical(String),
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::BlowUp { .. } => CliError::Numerical(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<LabError> for CliError {
    fn from(e: LabError) -> Self {
        match e {
            LabError::Resolution(_) => CliError::Numerical(e.to_string()),
            LabError::Core(c) => c.into(),
            LabError::Domain(_) => CliError::Usage(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Usage(format!("i/o failure: {e}"))
    }
}

impl From<ic::IcError> for CliError {
    fn from(e: ic::IcError) -> Self {
        CliError::Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    init_thread_pool();
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Numerical(msg)) => {
            eprintln!("numerical failure: {msg}");
            ExitCode::from(3)
        }
    }
}

/// Caps rayon parallelism at `SHRIRA_THREADS` when set.
fn init_thread_pool() {
    if let Ok(v) = std::env::var("SHRIRA_THREADS") {
        if let Ok(n) = v.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global();
        } else {
            eprintln!("warning: SHRIRA_THREADS={v:?} is not a number; ignored");
        }
    }
}

/// Returns `Ok(pass)`; `pass = false` means a probe ceiling was breached.
fn run(cli: Cli) -> Result<bool, CliError> {
    let out = cli.output_dir;
    let fmt = cli.report_format;
    match cli.command {
        Command::Solve(args) => run_solve(&out, fmt, args),
        Command::ProbeStrichartz(args) => run_strichartz(&out, fmt, args),
        Command::ProbeKernel(args) => run_kernel(&out, fmt, args),
        Command::ProbeCommutator(args) => run_inequality(&out, fmt, args, true),
        Command::ProbeProduct(args) => run_inequality(&out, fmt, args, false),
        Command::ProbeEnergy(args) => run_energy(&out, fmt, args),
        Command::ProbeGt(args) => run_gt(&out, fmt, args),
        Command::ProbeLemma52(args) => run_lemma52(&out, fmt, args),
        Command::BonaSmith(args) => run_bona_smith(&out, fmt, args),
        Command::Dirichlet(args) => run_dirichlet(&out, fmt, args),
        Command::Weyl(args) => run_weyl(&out, fmt, args),
        Command::Poisson(args) => run_poisson(&out, fmt, args),
        Command::FieldInfo(args) => run_field_info(&out, fmt, args),
    }
}

fn square_grid(modes: u32, oversample: u32) -> Result<GridSpec, CliError> {
    GridSpec::new(modes, modes, oversample).map_err(Into::into)
}

fn solve_config_from(args: &TrajectoryProbeArgs) -> SolveConfig {
    let mut cfg = SolveConfig::new(args.dt, args.horizon);
    cfg.sobolev_index = args.s;
    cfg.linear_only = args.linear_only;
    cfg
}

fn run_solve(out: &std::path::Path, fmt: ReportFormat, args: SolveArgs) -> Result<bool, CliError> {
    let grid = square_grid(args.grid, args.oversample)?;
    let u0 = ic::parse_ic(&args.ic, grid)?;
    let mut cfg = SolveConfig::new(args.dt, args.horizon);
    cfg.integrator = args.integrator;
    cfg.dealias = !args.no_dealias;
    cfg.sobolev_index = args.s;
    cfg.record_stride = args.record_stride;
    cfg.cfl_constant = args.cfl;
    cfg.blowup_ceiling = args.blowup_ceiling;

    let dir = RunDir::create(out, "solve", &args, fmt)?;
    let traj = solver::solve_ivp(&u0, &cfg)?;

    dir.write_json("diagnostics", &traj.diagnostics)?;
    if !args.no_snapshots {
        let snap_dir = dir.path.join("snapshots");
        std::fs::create_dir_all(&snap_dir)?;
        for (i, state) in traj.states.iter().enumerate() {
            spf2::save_field(state, snap_dir.join(format!("state_{i:06}.spf2")))?;
        }
    }

    #[derive(Serialize)]
    struct Summary {
        steps_recorded: usize,
        horizon: f64,
        x_mean_warning: bool,
        final_l2: f64,
        final_hs: f64,
        final_linf: f64,
    }
    let last = traj.diagnostics.last().expect("trajectory has diagnostics");
    dir.write_json(
        "summary",
        &Summary {
            steps_recorded: traj.times.len(),
            horizon: traj.horizon(),
            x_mean_warning: traj.x_mean_warning,
            final_l2: last.l2,
            final_hs: last.hs,
            final_linf: last.linf,
        },
    )?;
    Ok(true)
}

fn run_strichartz(
    out: &std::path::Path,
    fmt: ReportFormat,
    args: StrichartzArgs,
) -> Result<bool, CliError> {
    let grid = square_grid(args.grid, GridSpec::DEFAULT_OVERSAMPLE)?;
    let dir = RunDir::create(out, "probe-strichartz", &args, fmt)?;
    let report = if args.global {
        let mut cfg = strichartz::GlobalProbeConfig::new(grid, args.samples);
        cfg.s = args.s;
        cfg.sigma = args.sigma;
        strichartz::strichartz_global_probe(&cfg, args.seed)?
    } else {
        let mut cfg = strichartz::LocalScanConfig::up_to(grid, args.n_max, args.samples);
        cfg.alpha = args.alpha;
        strichartz::strichartz_local_probe(&cfg, args.seed)?
    };
    dir.write_report("report", &report)?;
    Ok(report.pass)
}

fn run_kernel(
    out: &std::path::Path,
    fmt: ReportFormat,
    args: KernelArgs,
) -> Result<bool, CliError> {
    let cfg = kernel::KernelSweepConfig {
        k_max: args.kmax,
        j_max: args.jmax,
        samples_per_cell: args.samples,
        eps: args.eps,
        ceilings: Ceilings::default(),
    };
    let dir = RunDir::create(out, "probe-kernel", &args, fmt)?;
    let sweep = kernel::kernel_sweep(&cfg, args.seed)?;
    dir.write_report("report", &sweep.report)?;
    #[derive(Serialize)]
    struct Trends {
        mann_kendall_z_over_k: f64,
        mann_kendall_z_over_j: f64,
        threshold: f64,
    }
    dir.write_json(
        "trends",
        &Trends {
            mann_kendall_z_over_k: sweep.trend_z_k,
            mann_kendall_z_over_j: sweep.trend_z_j,
            threshold: cfg.ceilings.kernel_trend_z,
        },
    )?;
    Ok(sweep.report.pass)
}

fn run_inequality(
    out: &std::path::Path,
    fmt: ReportFormat,
    args: InequalityArgs,
    commutator: bool,
) -> Result<bool, CliError> {
    let grid = square_grid(args.grid, GridSpec::DEFAULT_OVERSAMPLE)?;
    let mut cfg = inequalities::InequalitySweepConfig::new(grid, args.s, args.samples);
    cfg.sigma = args.sigma;
    let (name, report) = if commutator {
        (
            "probe-commutator",
            inequalities::commutator_sweep(&cfg, args.seed)?,
        )
    } else {
        (
            "probe-product",
            inequalities::product_sweep(&cfg, args.seed)?,
        )
    };
    let dir = RunDir::create(out, name, &args, fmt)?;
    dir.write_report("report", &report)?;
    Ok(report.pass)
}

fn run_energy(
    out: &std::path::Path,
    fmt: ReportFormat,
    args: TrajectoryProbeArgs,
) -> Result<bool, CliError> {
    let grid = square_grid(args.grid, GridSpec::DEFAULT_OVERSAMPLE)?;
    let u0 = ic::parse_ic(&args.ic, grid)?;
    let cfg = solve_config_from(&args);
    let dir = RunDir::create(out, "probe-energy", &args, fmt)?;
    let traj = solver::solve_ivp(&u0, &cfg)?;
    let ceilings = Ceilings::default();
    let energy_report = energy::energy_probe(&traj, args.s, &ceilings)?;
    dir.write_report("report", &energy_report)?;
    // the inhomogeneous L¹L^∞ bound rides along on the same trajectory
    let l1_report = energy::l1_linf_probe(&traj, args.s.max(1.0), &ceilings)?;
    dir.write_report("l1-linf", &l1_report)?;
    Ok(energy_report.pass && l1_report.pass)
}

fn run_gt(
    out: &std::path::Path,
    fmt: ReportFormat,
    args: TrajectoryProbeArgs,
) -> Result<bool, CliError> {
    let grid = square_grid(args.grid, GridSpec::DEFAULT_OVERSAMPLE)?;
    let u0 = ic::parse_ic(&args.ic, grid)?;
    let cfg = solve_config_from(&args);
    let dir = RunDir::create(out, "probe-gt", &args, fmt)?;
    let traj = solver::solve_ivp(&u0, &cfg)?;
    let report = energy::gt_probe(&traj, args.s, &Ceilings::default())?;
    dir.write_report("report", &report)?;
    Ok(report.pass)
}

fn run_lemma52(
    out: &std::path::Path,
    fmt: ReportFormat,
    args: Lemma52Args,
) -> Result<bool, CliError> {
    let grid = square_grid(args.grid, GridSpec::DEFAULT_OVERSAMPLE)?;
    let u0 = ic::parse_ic(&args.ic, grid)?;
    let base = SolveConfig::new(args.dt, 1.0);
    let dir = RunDir::create(out, "probe-lemma52", &args, fmt)?;
    let outcome = energy::lemma52_probe(&u0, args.s, args.a_s, &base, &Ceilings::default())?;
    dir.write_report("report", &outcome.report)?;
    Ok(outcome.report.pass)
}

fn parse_list<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>, CliError> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<T>()
                .map_err(|_| CliError::Usage(format!("bad {what} entry {t:?}")))
        })
        .collect()
}

fn run_bona_smith(
    out: &std::path::Path,
    fmt: ReportFormat,
    args: BonaSmithArgs,
) -> Result<bool, CliError> {
    let grid = square_grid(args.grid, GridSpec::DEFAULT_OVERSAMPLE)?;
    let dir = RunDir::create(out, "bona-smith", &args, fmt)?;
    let report = match args.experiment.as_str() {
        "convergence" => {
            let w0 = match &args.ic {
                Some(input) => ic::parse_ic(input, grid)?,
                None => shrira_lab::sampling::synthetic_decay_field(grid, args.s_data),
            };
            let cfg = bona_smith::ConvergenceConfig {
                s: args.s,
                s_data: args.s_data,
                n_list: parse_list(&args.n_list, "n-list")?,
                ceilings: Ceilings::default(),
            };
            bona_smith::convergence_experiment(&w0, &cfg)?
        }
        "flow" => {
            let u0 = match &args.ic {
                Some(input) => ic::parse_ic(input, grid)?,
                None => {
                    let mut rng = shrira_lab::sampling::sample_rng(args.seed, 1_000_000);
                    shrira_lab::sampling::normalize_sobolev(
                        &shrira_lab::sampling::random_field(grid, 3.0, true, &mut rng),
                        args.s,
                        0.3,
                    )
                }
            };
            let mut solve = SolveConfig::new(args.dt, args.horizon);
            solve.sobolev_index = args.s;
            let cfg = bona_smith::FlowContinuityConfig {
                s: args.s,
                deltas: parse_list(&args.deltas, "deltas")?,
                sigma: 3.0,
                solve,
                ceilings: Ceilings::default(),
            };
            bona_smith::flow_continuity_probe(&u0, &cfg, args.seed)?
        }
        other => return Err(CliError::Usage(format!("unknown experiment {other:?}"))),
    };
    dir.write_report("report", &report)?;
    Ok(report.pass)
}

fn run_dirichlet(
    out: &std::path::Path,
    fmt: ReportFormat,
    args: DirichletArgs,
) -> Result<bool, CliError> {
    if args.q_max < 1.0 {
        return Err(CliError::Usage(format!("Q = {} must be >= 1", args.q_max)));
    }
    let approx = shrira_arith::dirichlet_approx(args.alpha, args.q_max);
    #[derive(Serialize)]
    struct Row {
        alpha: f64,
        #[serde(rename = "Q")]
        q_max: f64,
        a: i64,
        q: u64,
        error: f64,
    }
    let dir = RunDir::create(out, "dirichlet", &args, fmt)?;
    dir.write_json(
        "result",
        &Row {
            alpha: approx.alpha,
            q_max: approx.q_max,
            a: approx.a,
            q: approx.q,
            error: approx.error(),
        },
    )?;
    Ok(true)
}

fn run_weyl(out: &std::path::Path, fmt: ReportFormat, args: WeylArgs) -> Result<bool, CliError> {
    #[derive(Serialize)]
    struct Row {
        alpha: f64,
        beta: f64,
        #[serde(rename = "N")]
        n_terms: u64,
        #[serde(rename = "S_abs")]
        s_abs: f64,
        bound: f64,
        ratio: f64,
        q: u64,
    }
    let f = shrira_arith::RealQuadratic::new(args.alpha, args.beta);
    let mut rows = Vec::new();
    let mut n = args.n_terms;
    for _ in 0..=args.octaves {
        let q_max = args.q_max.unwrap_or(n as f64);
        let (bound, approx) = shrira_arith::weyl_bound_rhs(f, n, args.eps, q_max)
            .map_err(|e| CliError::Usage(e.to_string()))?;
        let s_abs = shrira_arith::weyl_sum(f, n).norm();
        rows.push(Row {
            alpha: args.alpha,
            beta: args.beta,
            n_terms: n,
            s_abs,
            bound,
            ratio: s_abs / bound,
            q: approx.q,
        });
        n = n.saturating_mul(2);
    }
    let dir = RunDir::create(out, "weyl", &args, fmt)?;
    dir.write_json("result", &rows)?;
    Ok(true)
}

fn run_poisson(
    out: &std::path::Path,
    fmt: ReportFormat,
    args: PoissonArgs,
) -> Result<bool, CliError> {
    let family = match args.family.as_str() {
        "gaussian" => shrira_arith::PoissonFamily::Gaussian { sigma: args.sigma },
        "bump-convolved" => shrira_arith::PoissonFamily::BumpConvolved { sigma: args.sigma },
        other => return Err(CliError::Usage(format!("unknown family {other:?}"))),
    };
    if args.sigma <= 0.0 {
        return Err(CliError::Usage("sigma must be positive".into()));
    }
    let check = shrira_arith::poisson_check(family, args.truncation);
    #[derive(Serialize)]
    struct Row {
        family: String,
        sigma: f64,
        truncation: u32,
        lhs: f64,
        rhs: f64,
        difference: f64,
        tail_bound: f64,
    }
    let dir = RunDir::create(out, "poisson", &args, fmt)?;
    dir.write_json(
        "result",
        &Row {
            family: args.family,
            sigma: args.sigma,
            truncation: args.truncation,
            lhs: check.lhs,
            rhs: check.rhs,
            difference: (check.lhs - check.rhs).abs(),
            tail_bound: check.tail_bound,
        },
    )?;
    Ok(true)
}

fn run_field_info(
    out: &std::path::Path,
    fmt: ReportFormat,
    args: FieldInfoArgs,
) -> Result<bool, CliError> {
    let field: shrira_core::Field64 = spf2::load_field(&args.input)?;
    #[derive(Serialize)]
    struct Info {
        modes_x: u32,
        modes_y: u32,
        real: bool,
        l2: f64,
        h1: f64,
        h2: f64,
        linf: f64,
        x_mean_zero: bool,
        mean: f64,
    }
    use shrira_core::ops;
    let dir = RunDir::create(out, "field-info", &args, fmt)?;
    dir.write_json(
        "result",
        &Info {
            modes_x: field.grid().modes_x(),
            modes_y: field.grid().modes_y(),
            real: field.is_real(),
            l2: field.l2_norm(),
            h1: ops::sobolev_norm(&field, 1.0),
            h2: ops::sobolev_norm(&field, 2.0),
            linf: ops::linf_norm(&field),
            x_mean_zero: ops::x_mean_zero(&field),
            mean: field.coeff(shrira_core::FrequencyIndex::new(0, 0)).re,
        },
    )?;
    if args.export_shells {
        let shell_dir = dir.path.join("shells");
        std::fs::create_dir_all(&shell_dir)?;
        for shell in shrira_core::dyadic::shells(field.grid()) {
            let part = shrira_core::dyadic::p_n(&field, shell)?;
            if part.l2_norm() > 0.0 {
                spf2::save_field(
                    &part,
                    shell_dir.join(format!("shell_{:04}.spf2", shell.value())),
                )?;
            }
        }
    }
    Ok(true)
}
