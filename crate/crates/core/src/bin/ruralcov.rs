//! Command-line front end: load a TOML configuration, apply flag overrides,
//! run the selected scenario or a figure-analog sweep, and write the CSV plus
//! its metadata sidecar.
//!
//! Exit codes: 0 success, 1 configuration error, 2 runtime error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use ruralcov::config::{default_run_config, RunConfig};
use ruralcov::output::{emit_results, render_csv, sidecar_path};
use ruralcov::scenarios::{scenario1_charge_log, scenario2_charge_log};
use ruralcov::{run_configured, SimError};

/// Environment variable supplying the default worker-thread count.
const THREADS_ENV: &str = "RURALCOV_THREADS";

#[derive(Parser)]
#[command(
    name = "ruralcov",
    version,
    about = "Monte Carlo simulator of UAV-assisted rural coverage with renewable charging stations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the configured scenario sweep and emit CSV + metadata sidecar.
    Run(RunArgs),
    /// Reproduce one of the figure-analog sweeps with its default axes.
    Figure(FigureArgs),
    /// Print the resolved configuration with per-parameter provenance.
    Config(ConfigArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// TOML configuration file; all parameters default to the simulation
    /// table when omitted.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Trials per sweep point.
    #[arg(long)]
    trials: Option<u64>,
    /// Master seed of the run.
    #[arg(long)]
    seed: Option<u64>,
    /// Output CSV path.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Additional `section.key=value` overrides, repeatable.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    sets: Vec<String>,
}

#[derive(Args)]
struct RunArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Scenario to run (1, 2 or 3).
    #[arg(long)]
    scenario: Option<u8>,
    /// Charging time in seconds; collapses the scenario-1 sweep to this
    /// single value, or sets the fixed duration of scenarios 2 and 3.
    #[arg(long)]
    charge_time: Option<f64>,
    /// Write the charge-event log of a representative cycle simulation
    /// (scenarios 1 and 2) as CSV.
    #[arg(long)]
    charge_log: Option<PathBuf>,
}

#[derive(Args)]
struct FigureArgs {
    /// Figure id: 2 (charging-time sweep), 3 (capacity sweep) or
    /// 5 (pair-distance sweep).
    fig_id: u8,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct ConfigArgs {
    /// Scenario the defaults are resolved for.
    #[arg(long, default_value_t = 1)]
    scenario: u8,
    /// TOML configuration file to resolve instead of the defaults.
    #[arg(long)]
    config: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            eprint!("{e}");
            return ExitCode::from(1);
        }
        Err(e) => {
            // --help / --version
            print!("{e}");
            return ExitCode::SUCCESS;
        }
    };
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Config(msg)) => {
            eprintln!("configuration error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Runtime(msg)) => {
            eprintln!("runtime error: {msg}");
            ExitCode::from(2)
        }
    }
}

enum CliError {
    Config(String),
    Runtime(String),
}

impl From<SimError> for CliError {
    fn from(e: SimError) -> Self {
        let msg = e.to_string();
        let msg = msg
            .strip_prefix("configuration error: ")
            .unwrap_or(&msg)
            .to_string();
        CliError::Config(msg)
    }
}

fn dispatch(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Run(args) => {
            let mut cfg = load_config(args.common.config.as_deref())?;
            if let Some(s) = args.scenario {
                cfg.run.scenario = s;
            }
            if let Some(t) = args.charge_time {
                cfg.set_charge_time(t);
            }
            apply_common(&mut cfg, &args.common)?;
            cfg.validate()?;
            init_threads(&cfg);
            execute(&cfg)?;
            if let Some(path) = &args.charge_log {
                write_charge_log(&cfg, path)?;
            }
            Ok(())
        }
        Command::Figure(args) => {
            let mut cfg = load_config(args.common.config.as_deref())?;
            apply_figure(&mut cfg, args.fig_id)?;
            apply_common(&mut cfg, &args.common)?;
            if args.common.out.is_none() {
                cfg.run.output = format!("figure{}.csv", args.fig_id);
            }
            cfg.validate()?;
            init_threads(&cfg);
            execute(&cfg)
        }
        Command::Config(args) => {
            let mut cfg = load_config(args.config.as_deref())?;
            cfg.run.scenario = args.scenario;
            cfg.validate()?;
            println!("{}", cfg.to_toml_string());
            println!("# provenance (value source: paper table vs artifact default)");
            for (key, tag) in cfg.provenance() {
                println!("#   {key} = {tag}");
            }
            Ok(())
        }
    }
}

fn load_config(path: Option<&Path>) -> Result<RunConfig, CliError> {
    match path {
        None => Ok(default_run_config(1)),
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| {
                CliError::Config(format!("cannot read `{}`: {e}", p.display()))
            })?;
            Ok(RunConfig::from_toml_str(&text)?)
        }
    }
}

fn apply_common(cfg: &mut RunConfig, args: &CommonArgs) -> Result<(), CliError> {
    if let Some(n) = args.trials {
        cfg.run.n_trials = n;
    }
    if let Some(s) = args.seed {
        cfg.run.seed = s;
    }
    if let Some(out) = &args.out {
        cfg.run.output = out.display().to_string();
    }
    for kv in &args.sets {
        let (key, value) = kv.split_once('=').ok_or_else(|| {
            CliError::Config(format!("--set expects KEY=VALUE, got `{kv}`"))
        })?;
        cfg.apply_override(key.trim(), value)?;
    }
    Ok(())
}

/// Forces the scenario and default sweep axes of one figure analog; physics
/// parameters, trial count and seed stay as configured.
fn apply_figure(cfg: &mut RunConfig, fig_id: u8) -> Result<(), CliError> {
    let defaults = RunConfig::default();
    match fig_id {
        2 => {
            cfg.run.scenario = 1;
            cfg.scenario1.modes = defaults.scenario1.modes;
            cfg.scenario1.charge_times_s = defaults.scenario1.charge_times_s;
        }
        3 => {
            cfg.run.scenario = 2;
            cfg.scenario2.capacities_wh = defaults.scenario2.capacities_wh;
        }
        5 => {
            cfg.run.scenario = 3;
            cfg.scenario3.modes = defaults.scenario3.modes;
            cfg.scenario3.distances_m = defaults.scenario3.distances_m;
        }
        other => {
            return Err(CliError::Config(format!(
                "figure id must be 2, 3 or 5 (got {other})"
            )))
        }
    }
    Ok(())
}

fn init_threads(cfg: &RunConfig) {
    let threads = if cfg.run.threads > 0 {
        cfg.run.threads
    } else {
        std::env::var(THREADS_ENV)
            .ok()
            .and_then(|v| v.parse().ok())
            .unwrap_or(0)
    };
    if threads > 0 {
        // Ignore failure: the global pool can only be set once per process.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
}

fn execute(cfg: &RunConfig) -> Result<(), CliError> {
    let result = run_configured(cfg).map_err(|e| match e {
        SimError::Config(_) | SimError::InvalidParameter { .. } => CliError::from(e),
        other => CliError::Runtime(other.to_string()),
    })?;
    let out = PathBuf::from(&cfg.run.output);
    emit_results(&result, cfg, &out).map_err(|e| CliError::Runtime(e.to_string()))?;
    print!("{}", render_csv(&result));
    eprintln!(
        "wrote {} and {}",
        out.display(),
        sidecar_path(&out).display()
    );
    Ok(())
}

fn write_charge_log(cfg: &RunConfig, path: &Path) -> Result<(), CliError> {
    let log = match cfg.run.scenario {
        1 => {
            let s1 = cfg.scenario1()?;
            let mode = s1.modes[0];
            let t_ch = s1.charge_times_s[0];
            scenario1_charge_log(&s1, mode, t_ch, cfg.run.seed)?
        }
        2 => {
            let s2 = cfg.scenario2()?;
            let capacity = s2.capacities_wh[0];
            scenario2_charge_log(&s2, capacity, cfg.run.seed)?
        }
        _ => {
            return Err(CliError::Config(
                "the charge-event log applies to scenarios 1 and 2 (scenario 3 stations are private and queueless)"
                    .into(),
            ))
        }
    };
    let file = std::fs::File::create(path)
        .map_err(|e| CliError::Runtime(format!("cannot write `{}`: {e}", path.display())))?;
    log.write_csv(std::io::BufWriter::new(file))
        .map_err(|e| CliError::Runtime(format!("cannot write `{}`: {e}", path.display())))?;
    eprintln!("wrote {}", path.display());
    Ok(())
}
