//! Batch experiment runner: one subcommand per scenario, JSON configs with
//! flag overrides, CSV or JSON-lines output.
//!
//! Exit codes: 0 success, 2 config error, 3 impossible post-selection in a
//! single-point run, 1 internal error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use dicke_pointer::experiment::{
    render, run, CountSpec, ExperimentConfig, FloatSpec, OutputFormat, RunError, Scenario,
    SelectionSpec,
};

#[derive(Parser)]
#[command(
    name = "dicke-pointer",
    about = "Collective spin measurement sweeps in the symmetric subspace",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Eigenoperator and frequency-operator residuals over N
    Residual(CommonArgs),
    /// Commutator identity and 2/N norm scaling
    Commutator(CommonArgs),
    /// Entanglement deficit of the pointer coupling, exact vs first order
    Entangle(CommonArgs),
    /// Post-selected pointer corrections and interference orders
    Postselect(CommonArgs),
    /// No-flip probability against the exponential estimate
    Disturb(CommonArgs),
    /// Accuracy-disturbance trade-off table
    Sweep(CommonArgs),
    /// n-level moment inversion round trip
    Qudit(CommonArgs),
    /// Seeded Born sampling of microscopic frequencies
    Born(CommonArgs),
}

impl Command {
    fn scenario(&self) -> Scenario {
        match self {
            Command::Residual(_) => Scenario::Residual,
            Command::Commutator(_) => Scenario::Commutator,
            Command::Entangle(_) => Scenario::Entangle,
            Command::Postselect(_) => Scenario::Postselect,
            Command::Disturb(_) => Scenario::Disturb,
            Command::Sweep(_) => Scenario::Sweep,
            Command::Qudit(_) => Scenario::Qudit,
            Command::Born(_) => Scenario::Born,
        }
    }

    fn args(&self) -> &CommonArgs {
        match self {
            Command::Residual(a)
            | Command::Commutator(a)
            | Command::Entangle(a)
            | Command::Postselect(a)
            | Command::Disturb(a)
            | Command::Sweep(a)
            | Command::Qudit(a)
            | Command::Born(a) => a,
        }
    }
}

/// Flags mirror the config fields one for one and override them.
#[derive(Args)]
struct CommonArgs {
    /// JSON experiment config to start from
    #[arg(long)]
    config: Option<PathBuf>,
    /// Sample sizes, comma separated
    #[arg(long, value_delimiter = ',')]
    n: Option<Vec<u64>>,
    /// Accuracy parameters, comma separated
    #[arg(long, value_delimiter = ',')]
    epsilon: Option<Vec<f64>>,
    /// |c+|^2 of the prepared single-spin state
    #[arg(long)]
    c_plus_sq: Option<f64>,
    /// Bloch polar angle of the prepared state (radians)
    #[arg(long)]
    theta: Option<f64>,
    /// Bloch azimuthal angle (radians)
    #[arg(long)]
    phi: Option<f64>,
    /// Post-selected count of +1 outcomes
    #[arg(long)]
    n_plus: Option<u64>,
    /// Trials for stochastic scenarios
    #[arg(long)]
    trials: Option<u64>,
    /// Seed for stochastic scenarios (mandatory there)
    #[arg(long)]
    seed: Option<u64>,
    /// Expansion orders for interference profiles
    #[arg(long)]
    orders: Option<u32>,
    /// Output format
    #[arg(long, value_parser = ["csv", "json"])]
    format: Option<String>,
    /// Output path (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

fn build_config(scenario: Scenario, args: &CommonArgs) -> Result<ExperimentConfig, RunError> {
    let mut config = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| RunError::Config {
                field: "config".into(),
                message: format!("cannot read {}: {e}", path.display()),
            })?;
            let mut c = ExperimentConfig::from_json(&text)?;
            // The subcommand decides the scenario.
            c.scenario = scenario;
            c
        }
        None => ExperimentConfig::new(scenario),
    };

    if let Some(n) = &args.n {
        config.n = Some(CountSpec::List(n.clone()));
    }
    if let Some(eps) = &args.epsilon {
        config.epsilon = Some(FloatSpec::List(eps.clone()));
    }
    if args.c_plus_sq.is_some() {
        config.state.c_plus_sq = args.c_plus_sq;
        config.state.theta = None;
        config.state.phi = None;
    }
    if args.theta.is_some() {
        config.state.theta = args.theta;
        config.state.c_plus_sq = None;
    }
    if args.phi.is_some() {
        config.state.phi = args.phi;
        config.state.c_plus_sq = None;
    }
    if let Some(k) = args.n_plus {
        config.n_plus = Some(vec![SelectionSpec::Count(k)]);
    }
    if args.trials.is_some() {
        config.trials = args.trials;
    }
    if args.seed.is_some() {
        config.seed = args.seed;
    }
    if args.orders.is_some() {
        config.orders = args.orders;
    }
    if let Some(f) = &args.format {
        config.format = match f.as_str() {
            "json" => OutputFormat::Json,
            _ => OutputFormat::Csv,
        };
    }
    if let Some(out) = &args.out {
        config.out = Some(out.display().to_string());
    }
    Ok(config)
}

fn execute() -> Result<(), RunError> {
    let cli = Cli::parse();
    let config = build_config(cli.command.scenario(), cli.command.args())?;
    let records = run(&config)?;
    let rendered = render(&records, config.format);
    match &config.out {
        Some(path) => std::fs::write(path, rendered).map_err(|e| RunError::Config {
            field: "out".into(),
            message: format!("cannot write {path}: {e}"),
        })?,
        None => print!("{rendered}"),
    }
    Ok(())
}

fn main() -> ExitCode {
    match execute() {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            match err {
                RunError::Config { .. } => ExitCode::from(2),
                RunError::ImpossibleSelection(_) => ExitCode::from(3),
                RunError::Internal(_) => ExitCode::from(1),
            }
        }
    }
}
