//! `lew` — run lexicon-evolution simulations, sweeps and analyses.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::atomic::{AtomicUsize, Ordering};

use clap::{Args, Parser, Subcommand};

use lew_core::experiment::{
    analyze, conditions_from_axes, derive_run_seed, load_config, load_sweep_config,
    paper_conditions, read_results, run_simulation, run_sweep, write_report, write_results,
    AnalyzeError, ConditionSpec, ConfigError, ResultsError, BASELINE_CONDITION, CONFIG_KEYS,
};

fn config_key_help() -> String {
    let mut out = String::from("Config file keys (line-based `key = value`; `#` comments):\n");
    for (key, default, help) in CONFIG_KEYS {
        out.push_str(&format!("  {key:<28} default: {default:<28} {help}\n"));
    }
    out.push_str(
        "\nSweep-only keys:\n  \
         sweep_p_intra                comma-separated levels crossed into the grid\n  \
         sweep_male_present           comma-separated booleans crossed into the grid\n",
    );
    out
}

#[derive(Parser)]
#[command(
    name = "lew",
    about = "Agent-based simulation of lexicon emergence under social structures",
    version,
    after_long_help = config_key_help()
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonRunArgs {
    /// Config file (omit for the default parameter set)
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output directory, created if absent
    #[arg(long, default_value = "out")]
    out: PathBuf,
    /// Master seed override
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads for run execution (0 = all cores)
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    /// Runs per condition override
    #[arg(long)]
    runs: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Execute a single run and write its per-round metrics CSV
    Run {
        #[command(flatten)]
        common: CommonRunArgs,
    },
    /// Execute the config-defined condition grid
    Sweep {
        #[command(flatten)]
        common: CommonRunArgs,
    },
    /// Execute the fixed ten-condition replication preset
    ReplicatePaper {
        #[command(flatten)]
        common: CommonRunArgs,
    },
    /// Summarize an existing results CSV: summary table, tests, plot data and charts
    Analyze {
        /// Results CSV produced by run/sweep/replicate-paper
        results: PathBuf,
        /// Output directory, created if absent
        #[arg(long, default_value = "out")]
        out: PathBuf,
        /// Condition id every other condition is tested against
        #[arg(long, default_value = BASELINE_CONDITION)]
        baseline: String,
    },
}

/// Config/validation failures exit 1, I/O failures exit 2.
enum CliError {
    Validation(String),
    Io(String),
}

impl From<ConfigError> for CliError {
    fn from(err: ConfigError) -> Self {
        CliError::Validation(err.to_string())
    }
}

impl From<AnalyzeError> for CliError {
    fn from(err: AnalyzeError) -> Self {
        CliError::Validation(err.to_string())
    }
}

impl From<ResultsError> for CliError {
    fn from(err: ResultsError) -> Self {
        match err {
            ResultsError::Io(io) => CliError::Io(io.to_string()),
            format_err => CliError::Validation(format_err.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(err: std::io::Error) -> Self {
        CliError::Io(err.to_string())
    }
}

fn read_config_file(path: Option<&Path>) -> Result<String, CliError> {
    match path {
        Some(path) => std::fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display()))),
        None => Ok(String::new()),
    }
}

fn progress_printer(label: &'static str) -> impl Fn(usize, usize) + Sync {
    let last = AtomicUsize::new(0);
    move |done, total| {
        // A plain textual counter, throttled to ~20 updates.
        let step = (total / 20).max(1);
        if done % step == 0 || done == total {
            let prev = last.swap(done, Ordering::Relaxed);
            if done != prev {
                eprintln!("{label}: {done}/{total} runs");
            }
        }
    }
}

fn execute_and_write(
    conditions: &[ConditionSpec],
    runs: usize,
    master_seed: u64,
    jobs: usize,
    out: &Path,
    label: &'static str,
) -> Result<(), CliError> {
    std::fs::create_dir_all(out)?;
    let progress = progress_printer(label);
    let results = run_sweep(conditions, runs, master_seed, jobs, Some(&progress))?;
    let path = out.join("results.csv");
    write_results(&results, &path)?;
    eprintln!("wrote {}", path.display());
    Ok(())
}

fn cmd_run(common: &CommonRunArgs) -> Result<(), CliError> {
    let text = read_config_file(common.config.as_deref())?;
    let mut config = load_config(&text)?;
    if let Some(seed) = common.seed {
        config.master_seed = seed;
    }
    std::fs::create_dir_all(&common.out)?;
    let seed = derive_run_seed(config.master_seed, 0, 0);
    let result = run_simulation(&config, seed)?;
    let path = common.out.join("results.csv");
    write_results(&[result], &path)?;
    eprintln!("wrote {}", path.display());
    Ok(())
}

fn cmd_sweep(common: &CommonRunArgs) -> Result<(), CliError> {
    let text = read_config_file(common.config.as_deref())?;
    let (mut base, axes) = load_sweep_config(&text)?;
    if let Some(seed) = common.seed {
        base.master_seed = seed;
    }
    let runs = common.runs.unwrap_or(base.runs);
    let conditions = conditions_from_axes(&base, &axes);
    execute_and_write(
        &conditions,
        runs,
        base.master_seed,
        common.jobs,
        &common.out,
        "sweep",
    )
}

fn cmd_replicate(common: &CommonRunArgs) -> Result<(), CliError> {
    let text = read_config_file(common.config.as_deref())?;
    let mut base = load_config(&text)?;
    if let Some(seed) = common.seed {
        base.master_seed = seed;
    }
    // Desk-scale default; pass --runs 600 for the full replication.
    let runs = common.runs.unwrap_or(100);
    let conditions = paper_conditions(&base);
    execute_and_write(
        &conditions,
        runs,
        base.master_seed,
        common.jobs,
        &common.out,
        "replicate-paper",
    )
}

fn cmd_analyze(results_path: &Path, out: &Path, baseline: &str) -> Result<(), CliError> {
    let results = read_results(results_path)?;
    let report = analyze(&results, baseline)?;
    let written = write_report(&report, out)?;
    for path in written {
        eprintln!("wrote {}", path.display());
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Run { common } => cmd_run(common),
        Command::Sweep { common } => cmd_sweep(common),
        Command::ReplicatePaper { common } => cmd_replicate(common),
        Command::Analyze {
            results,
            out,
            baseline,
        } => cmd_analyze(results, out, baseline),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Validation(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
        Err(CliError::Io(message)) => {
            eprintln!("i/o error: {message}");
            ExitCode::from(2)
        }
    }
}
