//! Benchmark front end for the active-flux solver: run problems, produce
//! convergence tables, sweep limiter combinations, and execute the
//! randomized verification suites.

// `!(x > 0.0)` rejects NaN along with non-positive values
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod output;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use active_flux::mesh::l1_error;
use active_flux::problems::{self, ProblemSpec};
use active_flux::{
    advance_with_bp_protocol, BpMode, Error, LimiterConfig, Scheme, SplittingKind, StepController,
};

const EXIT_CONFIG: u8 = 1;
const EXIT_BP_ABORT: u8 = 2;

#[derive(Parser)]
#[command(
    name = "af-bench",
    about = "Active flux benchmark runner for 1D hyperbolic conservation laws"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one benchmark and write averages.csv, points.csv, meta.json.
    Run(RunArgs),
    /// Mesh-refinement study against the problem's reference solution.
    Convergence(ConvergenceArgs),
    /// Randomized property suites (fixed seed, machine-checkable).
    Verify(VerifyArgs),
    /// The advection limiter-combination table in one invocation.
    Sweep(SweepArgs),
    /// List the available problems and suites.
    List,
}

#[derive(Args, Clone)]
struct SchemeArgs {
    /// Point-value update: js | llf | sw | vh.
    #[arg(long, default_value = "llf")]
    splitting: String,
    /// BP limiter for the cell average: off | global | local.
    #[arg(long, default_value = "global")]
    bp_average: String,
    /// BP limiter for the point value: off | global | local.
    #[arg(long, default_value = "global")]
    bp_point: String,
    /// Use the monotone power-law reconstruction for point derivatives.
    #[arg(long)]
    power_law: bool,
    /// Disable all limiting (overrides the bp flags).
    #[arg(long)]
    no_limiters: bool,
}

impl SchemeArgs {
    fn splitting(&self) -> Result<SplittingKind, String> {
        SplittingKind::parse(&self.splitting)
            .ok_or_else(|| format!("unknown splitting '{}'", self.splitting))
    }

    fn limiter(&self, spec: &ProblemSpec) -> Result<LimiterConfig, String> {
        if self.no_limiters {
            return Ok(LimiterConfig {
                bp_average: BpMode::Off,
                bp_point: BpMode::Off,
                power_law: self.power_law,
            });
        }
        let bp_average = BpMode::parse(&self.bp_average)
            .ok_or_else(|| format!("unknown bp-average mode '{}'", self.bp_average))?;
        let bp_point = BpMode::parse(&self.bp_point)
            .ok_or_else(|| format!("unknown bp-point mode '{}'", self.bp_point))?;
        if !spec.equation.is_scalar() && (bp_average == BpMode::Local || bp_point == BpMode::Local)
        {
            return Err(
                "local maximum-principle bounds are defined for scalar problems only".into(),
            );
        }
        Ok(LimiterConfig {
            bp_average,
            bp_point,
            power_law: self.power_law,
        })
    }
}

#[derive(Args)]
struct RunArgs {
    /// Problem name (see `af-bench list`).
    #[arg(long)]
    problem: String,
    /// Number of cells; defaults to the problem's canonical size.
    #[arg(long)]
    n: Option<usize>,
    /// CFL number; defaults to the problem's per-splitting table.
    #[arg(long, allow_negative_numbers = true)]
    cfl: Option<f64>,
    /// Final time; defaults to the problem's value.
    #[arg(long, allow_negative_numbers = true)]
    t_final: Option<f64>,
    #[command(flatten)]
    scheme: SchemeArgs,
    /// Output directory (default runs/<problem>; AF_BENCH_OUT overrides).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ConvergenceArgs {
    #[arg(long)]
    problem: String,
    /// Comma-separated mesh sizes.
    #[arg(long, default_value = "40,80,160,320")]
    meshes: String,
    #[arg(long, allow_negative_numbers = true)]
    cfl: Option<f64>,
    #[command(flatten)]
    scheme: SchemeArgs,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite name, or all suites when omitted.
    #[arg(long)]
    suite: Option<String>,
    #[arg(long, default_value_t = 20240711)]
    seed: u64,
    #[arg(long, default_value_t = 10000)]
    cases: u64,
    /// Emit a JSON report on stdout instead of text lines.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, default_value_t = 400)]
    n: usize,
    #[arg(long, default_value_t = 0.1)]
    cfl: f64,
}

fn main() -> ExitCode {
    // every command-line problem is a configuration error (exit 1);
    // exit 2 is reserved for runs aborted by the BP protocol
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let ok = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let _ = e.print();
            return if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_CONFIG)
            };
        }
    };
    match cli.command {
        Command::Run(args) => run(args),
        Command::Convergence(args) => convergence(args),
        Command::Verify(args) => verify(args),
        Command::Sweep(args) => sweep(args),
        Command::List => {
            println!("problems:");
            for name in problems::all_names() {
                println!("  {name}");
            }
            println!("verification suites:");
            for name in active_flux::verify::suite_names() {
                println!("  {name}");
            }
            ExitCode::SUCCESS
        }
    }
}

fn config_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_CONFIG)
}

fn run(args: RunArgs) -> ExitCode {
    let Some(spec) = problems::by_name(&args.problem) else {
        return config_error(&format!("unknown problem '{}'", args.problem));
    };
    let splitting = match args.scheme.splitting() {
        Ok(s) => s,
        Err(e) => return config_error(&e),
    };
    let limiter = match args.scheme.limiter(&spec) {
        Ok(l) => l,
        Err(e) => return config_error(&e),
    };
    let n = args.n.unwrap_or(spec.default_n);
    let cfl = args.cfl.unwrap_or_else(|| spec.default_cfl(splitting));
    let t_final = args.t_final.unwrap_or(spec.t_final);
    if !(cfl > 0.0) || !(t_final > 0.0) {
        return config_error("cfl and t-final must be positive");
    }

    let out_dir = args
        .out
        .or_else(|| std::env::var_os("AF_BENCH_OUT").map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("runs").join(&args.problem));
    if let Err(e) = std::fs::create_dir_all(&out_dir) {
        return config_error(&format!("cannot create {}: {e}", out_dir.display()));
    }

    let (eq, grid, state) = match spec.initialize(n) {
        Ok(x) => x,
        Err(e) => return config_error(&e.to_string()),
    };
    let scheme = match Scheme::new(eq, grid, spec.boundary, splitting, limiter) {
        Ok(s) => s,
        Err(e) => return config_error(&e.to_string()),
    };
    let ctrl = StepController::new(cfl, t_final);
    let started = Instant::now();
    match advance_with_bp_protocol(&scheme, state, &ctrl) {
        Ok((final_state, diag)) => {
            let wall = started.elapsed().as_secs_f64();
            let info = output::MetaInfo {
                problem: spec.name,
                n_cells: n,
                cfl,
                splitting: splitting.name(),
                bp_average: limiter.bp_average.name(),
                bp_point: limiter.bp_point.name(),
                power_law: limiter.power_law,
                t_final,
                wall_seconds: wall,
            };
            let io = output::write_averages(&out_dir, &eq, &grid, &final_state)
                .and_then(|_| output::write_points(&out_dir, &eq, &grid, &final_state))
                .and_then(|_| output::write_meta(&out_dir, &info, &eq, &diag, &final_state));
            if let Err(e) = io {
                return config_error(&format!("failed to write artifacts: {e}"));
            }
            let m = eq.n_components();
            println!(
                "{}: n = {n}, steps = {}, halvings = {}, range = {:?} .. {:?}, wall = {wall:.2}s",
                spec.name,
                diag.steps,
                diag.halvings,
                &diag.comp_min[..m],
                &diag.comp_max[..m],
            );
            println!("artifacts in {}", out_dir.display());
            ExitCode::SUCCESS
        }
        Err(Error::Abort { time, detail }) => {
            eprintln!("run aborted at t = {time:.6e}: {detail}");
            ExitCode::from(EXIT_BP_ABORT)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_BP_ABORT)
        }
    }
}

fn convergence(args: ConvergenceArgs) -> ExitCode {
    let Some(spec) = problems::by_name(&args.problem) else {
        return config_error(&format!("unknown problem '{}'", args.problem));
    };
    let splitting = match args.scheme.splitting() {
        Ok(s) => s,
        Err(e) => return config_error(&e),
    };
    let limiter = match args.scheme.limiter(&spec) {
        Ok(l) => l,
        Err(e) => return config_error(&e),
    };
    let meshes: Vec<usize> = match args
        .meshes
        .split(',')
        .map(|s| s.trim().parse::<usize>())
        .collect()
    {
        Ok(v) => v,
        Err(_) => return config_error("could not parse --meshes"),
    };
    let cfl = args.cfl.unwrap_or_else(|| spec.default_cfl(splitting));

    match convergence_table(&spec, splitting, limiter, cfl, &meshes) {
        Ok(rows) => {
            let m = spec.equation.n_components();
            print!("{:>8}", "N");
            for c in 0..m {
                print!("{:>14} {:>7}", format!("l1[{c}]"), "order");
            }
            println!();
            for (i, (n, err)) in rows.iter().enumerate() {
                print!("{n:>8}");
                for (c, e) in err.iter().enumerate().take(m) {
                    let order = if i > 0 {
                        let prev = rows[i - 1].1[c];
                        format!("{:.2}", (prev / e).log2())
                    } else {
                        "-".to_string()
                    };
                    print!("{e:>14.4e} {order:>7}");
                }
                println!();
            }
            ExitCode::SUCCESS
        }
        Err(Error::Abort { time, detail }) => {
            eprintln!("run aborted at t = {time:.6e}: {detail}");
            ExitCode::from(EXIT_BP_ABORT)
        }
        Err(e) => config_error(&e.to_string()),
    }
}

type ConvRow = (usize, [f64; 3]);

fn convergence_table(
    spec: &ProblemSpec,
    splitting: SplittingKind,
    limiter: LimiterConfig,
    cfl: f64,
    meshes: &[usize],
) -> Result<Vec<ConvRow>, Error> {
    let mut rows = Vec::new();
    for &n in meshes {
        let (eq, grid, state) = spec.initialize(n)?;
        let scheme = Scheme::new(eq, grid, spec.boundary, splitting, limiter)?;
        let ctrl = StepController::new(cfl, spec.t_final);
        let (final_state, _) = advance_with_bp_protocol(&scheme, state, &ctrl)?;
        let reference = spec
            .reference_averages(&grid, spec.t_final)?
            .ok_or_else(|| {
                Error::Config(format!("problem '{}' has no reference solution", spec.name))
            })?;
        let err = l1_error(&final_state, &reference, eq.n_components());
        rows.push((n, err));
    }
    Ok(rows)
}

fn verify(args: VerifyArgs) -> ExitCode {
    let reports = match &args.suite {
        Some(name) => match active_flux::verify::run_suite(name, args.seed, args.cases) {
            Ok(r) => vec![r],
            Err(e) => return config_error(&e.to_string()),
        },
        None => active_flux::verify::run_all(args.seed, args.cases),
    };
    let all_passed = reports.iter().all(|r| r.passed());
    if args.json {
        let json: Vec<_> = reports
            .iter()
            .map(|r| {
                serde_json::json!({
                    "suite": r.name,
                    "cases": r.cases,
                    "failures": r.failures,
                    "passed": r.passed(),
                    "messages": r.messages,
                })
            })
            .collect();
        println!(
            "{}",
            serde_json::to_string_pretty(&serde_json::json!({
                "seed": args.seed,
                "passed": all_passed,
                "suites": json,
            }))
            .expect("serializable report")
        );
    } else {
        for r in &reports {
            println!(
                "{:<28} {:>8} cases  {}",
                r.name,
                r.cases,
                if r.passed() { "pass" } else { "FAIL" }
            );
            for msg in &r.messages {
                println!("    {msg}");
            }
        }
    }
    if all_passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_CONFIG)
    }
}

fn sweep(args: SweepArgs) -> ExitCode {
    let spec = problems::advection_profile();
    let combos: &[(&str, BpMode, BpMode, bool)] = &[
        ("none", BpMode::Off, BpMode::Off, false),
        ("plr", BpMode::Off, BpMode::Off, true),
        ("global avg", BpMode::Global, BpMode::Off, false),
        ("local avg", BpMode::Local, BpMode::Off, false),
        ("global point", BpMode::Off, BpMode::Global, false),
        ("local point", BpMode::Off, BpMode::Local, false),
        ("plr + global avg", BpMode::Global, BpMode::Off, true),
        ("plr + local avg", BpMode::Local, BpMode::Off, true),
        (
            "global avg + global point",
            BpMode::Global,
            BpMode::Global,
            false,
        ),
        (
            "local avg + global point",
            BpMode::Local,
            BpMode::Global,
            false,
        ),
        (
            "plr + global avg + global point",
            BpMode::Global,
            BpMode::Global,
            true,
        ),
        (
            "plr + local avg + global point",
            BpMode::Local,
            BpMode::Global,
            true,
        ),
        (
            "global avg + local point",
            BpMode::Global,
            BpMode::Local,
            false,
        ),
        (
            "local avg + local point",
            BpMode::Local,
            BpMode::Local,
            false,
        ),
        (
            "plr + global avg + local point",
            BpMode::Global,
            BpMode::Local,
            true,
        ),
        (
            "plr + local avg + local point",
            BpMode::Local,
            BpMode::Local,
            true,
        ),
    ];
    println!(
        "advection profile, n = {}, cfl = {}, T = {}",
        args.n, args.cfl, spec.t_final
    );
    println!(
        "{:<34} {:>13} {:>13}  BP over run",
        "limiting", "final min", "final max"
    );
    for (label, avg, point, plr) in combos {
        let limiter = LimiterConfig {
            bp_average: *avg,
            bp_point: *point,
            power_law: *plr,
        };
        let (eq, grid, state) = match spec.initialize(args.n) {
            Ok(x) => x,
            Err(e) => return config_error(&e.to_string()),
        };
        let scheme = match Scheme::new(eq, grid, spec.boundary, SplittingKind::LlfFvs, limiter) {
            Ok(s) => s,
            Err(e) => return config_error(&e.to_string()),
        };
        let ctrl = StepController::new(args.cfl, spec.t_final);
        match advance_with_bp_protocol(&scheme, state, &ctrl) {
            Ok((out, diag)) => {
                let ok = diag.comp_min[0] >= 0.0 && diag.comp_max[0] <= 1.0;
                let (lo, hi) = out.component_range(1);
                println!(
                    "{label:<34} {:>13.6e} {:>13.6e}  {}",
                    lo[0],
                    hi[0],
                    if ok { "yes" } else { "NO" }
                );
            }
            Err(e) => {
                println!("{label:<34} failed: {e}");
            }
        }
    }
    ExitCode::SUCCESS
}
