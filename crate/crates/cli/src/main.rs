use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use schur_rigidity::{SamplePlan, Tolerances};
use schur_rigidity_cli::commands::{self, parse_complex, run};
use schur_rigidity_cli::demo::{demo, Demo};
use schur_rigidity_cli::render::render_text;
use schur_rigidity_cli::{CliError, CliResult, ProblemFile, RationalJson, Report, Settings};
use serde::de::DeserializeOwned;

#[derive(Parser, Debug)]
#[command(
    name = "schur-rigidity",
    version,
    about = "Boundary interpolation and rigidity checks for generalized Schur functions"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Root matching and pole detection tolerance.
    #[arg(long, global = true, default_value_t = Tolerances::default().root)]
    tol_root: f64,
    /// Unimodularity tolerance on the unit circle.
    #[arg(long, global = true, default_value_t = Tolerances::default().circle)]
    tol_circle: f64,
    /// Threshold for Taylor coefficients counted as zero.
    #[arg(long, global = true, default_value_t = Tolerances::default().order)]
    tol_order: f64,
    /// Maximum number of sample points for the negative-squares estimator.
    #[arg(long, global = true, default_value_t = SamplePlan::default().max_points)]
    samples: usize,
    /// Seed for the sample points.
    #[arg(long, global = true, default_value_t = SamplePlan::default().seed)]
    seed: u64,
    /// Sample points are drawn from |z| < radius.
    #[arg(long, global = true, default_value_t = SamplePlan::default().radius)]
    radius: f64,
    #[arg(long, global = true, value_enum, default_value_t = Output::Json)]
    output: Output,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Output {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build P and Theta, solve for the given parameter and verify the result.
    Solve { problem: PathBuf },
    /// Estimate the number of negative squares of a rational function.
    Negsq { function: PathBuf },
    /// Check whether a candidate solution is forced to equal T_Theta(x).
    Rigidity {
        problem: PathBuf,
        /// Unimodular contact value, as `re,im`.
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        /// Candidate solution file.
        #[arg(long)]
        candidate: PathBuf,
    },
    /// Krein–Langer factorization s = s0 / b.
    Factor { function: PathBuf },
    /// Rerun a worked example against its golden values.
    Demo {
        #[arg(value_enum)]
        name: DemoName,
        /// Angular derivative for the `alpha` demo.
        #[arg(long, default_value_t = 0.5)]
        alpha: f64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum DemoName {
    BurnsKrantz,
    Inverse,
    Alpha,
}

fn settings(g: &Global) -> Settings {
    let mut s = Settings::default();
    s.tol.root = g.tol_root;
    s.tol.circle = g.tol_circle;
    s.tol.order = g.tol_order;
    s.plan.max_points = g.samples;
    s.plan.seed = g.seed;
    s.plan.radius = g.radius;
    s
}

fn load<T: DeserializeOwned>(path: &Path) -> CliResult<T> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::invalid(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::invalid(format!("{}: {e}", path.display())))
}

/// Report for a failure before any command-specific work started.
fn early(command: &str, settings: &Settings, e: CliError) -> Report {
    run(command, settings, |_| Err(e))
}

fn execute(command: &Command, settings: &Settings) -> Report {
    match command {
        Command::Solve { problem } => match load::<ProblemFile>(problem) {
            Ok(p) => commands::solve(&p, settings),
            Err(e) => early("solve", settings, e),
        },
        Command::Negsq { function } => match load::<RationalJson>(function) {
            Ok(f) => commands::negsq(&f, settings),
            Err(e) => early("negsq", settings, e),
        },
        Command::Rigidity { problem, x, candidate } => {
            let inputs = load::<ProblemFile>(problem).and_then(|p| {
                let x = parse_complex(x).map_err(|e| CliError::invalid(format!("x: {e}")))?;
                Ok((p, x, load::<RationalJson>(candidate)?))
            });
            match inputs {
                Ok((p, x, c)) => commands::rigidity(&p, x, &c, settings),
                Err(e) => early("rigidity", settings, e),
            }
        }
        Command::Factor { function } => match load::<RationalJson>(function) {
            Ok(f) => commands::factor(&f, settings),
            Err(e) => early("factor", settings, e),
        },
        Command::Demo { name, alpha } => {
            let which = match name {
                DemoName::BurnsKrantz => Demo::BurnsKrantz,
                DemoName::Inverse => Demo::Inverse,
                DemoName::Alpha => Demo::Alpha(*alpha),
            };
            demo(which, settings)
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let settings = settings(&cli.global);
    std::panic::set_hook(Box::new(|info| log::error!("{info}")));
    let report = std::panic::catch_unwind(|| execute(&cli.command, &settings)).unwrap_or_else(|_| {
        early(
            "internal",
            &settings,
            CliError::failed("internal error while evaluating the request"),
        )
    });
    match cli.global.output {
        Output::Json => match serde_json::to_string_pretty(&report) {
            Ok(s) => println!("{s}"),
            Err(e) => {
                log::error!("could not serialize the report: {e}");
                return ExitCode::from(1);
            }
        },
        Output::Text => print!("{}", render_text(&report)),
    }
    ExitCode::from(report.exit_code())
}
