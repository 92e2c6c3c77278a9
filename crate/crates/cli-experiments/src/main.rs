//! `nfdm-lab`: reproducible experiment runner.
//!
//! Each subcommand drives one study from a JSON config (built-in defaults
//! when none is given).  Any long flag whose name is a config key path —
//! dots descending into nested sections, kebab-case mapping onto the
//! snake_case keys — overrides that key, e.g. `--link.n-spans 6` or
//! `--n-frames 50`.  Exit codes: 0 success, 2 configuration error,
//! 3 numerical-domain failure.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use cli_experiments::config::{self, ExperimentConfig, ExperimentKind};
use cli_experiments::report::Reporter;
use cli_experiments::{experiments, RunError};

#[derive(Parser)]
#[command(
    name = "nfdm-lab",
    version,
    about = "Simulation laboratory for dual-polarisation nonlinear frequency-division multiplexing"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Joint vs per-component modulation through fibre and matched noise
    #[command(name = "compare-b-qc")]
    CompareBQc(RunArgs),
    /// Guard-interval overhead sweep: detection quality vs spectral efficiency
    #[command(name = "eta-sweep")]
    EtaSweep(RunArgs),
    /// Conditional entropy of received symbols under amplifier noise
    #[command(name = "entropy")]
    Entropy(RunArgs),
    /// Noiseless transceiver loopback distortion vs symbol energy
    #[command(name = "b2b")]
    B2b(RunArgs),
    /// Backpropagation residual distortion with a Nyquist transceiver
    #[command(name = "dbp")]
    Dbp(RunArgs),
}

impl Command {
    fn kind(&self) -> ExperimentKind {
        match self {
            Command::CompareBQc(_) => ExperimentKind::CompareBQc,
            Command::EtaSweep(_) => ExperimentKind::EtaSweep,
            Command::Entropy(_) => ExperimentKind::EntropyStudy,
            Command::B2b(_) => ExperimentKind::B2bDistortion,
            Command::Dbp(_) => ExperimentKind::DbpResidual,
        }
    }

    fn args(&self) -> &RunArgs {
        match self {
            Command::CompareBQc(a)
            | Command::EtaSweep(a)
            | Command::Entropy(a)
            | Command::B2b(a)
            | Command::Dbp(a) => a,
        }
    }
}

#[derive(Args)]
struct RunArgs {
    /// JSON config file; built-in defaults for the subcommand when omitted
    #[arg(long)]
    config: Option<PathBuf>,
    /// Override the RNG seed
    #[arg(long)]
    seed: Option<u64>,
    /// Shrink statistical weight to the desk-scale presets
    #[arg(long)]
    desk_scale: bool,
    /// Override the output directory
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads (falls back to env NFDM_LAB_THREADS, then all cores)
    #[arg(long)]
    threads: Option<usize>,
}

/// Long flags that belong to the CLI itself; every other long flag is a
/// config-key override.
const CLI_FLAGS: &[&str] = &["config", "seed", "desk-scale", "out", "threads", "help", "version"];

/// Split argv into the part clap parses and `(key path, raw value)`
/// override pairs.
#[allow(clippy::type_complexity)]
fn split_overrides(argv: &[String]) -> Result<(Vec<String>, Vec<(String, String)>), RunError> {
    let mut clean = Vec::with_capacity(argv.len());
    let mut overrides = Vec::new();
    let mut it = argv.iter().peekable();
    if let Some(first) = it.next() {
        clean.push(first.clone());
    }
    while let Some(arg) = it.next() {
        let Some(name) = arg.strip_prefix("--") else {
            clean.push(arg.clone());
            continue;
        };
        let (key, inline_value) = match name.split_once('=') {
            Some((k, v)) => (k, Some(v.to_string())),
            None => (name, None),
        };
        if CLI_FLAGS.contains(&key) {
            clean.push(arg.clone());
            continue;
        }
        let value = match inline_value {
            Some(v) => v,
            None => it
                .next()
                .cloned()
                .ok_or_else(|| RunError::config(format!("override --{key} is missing a value")))?,
        };
        overrides.push((key.to_string(), value));
    }
    Ok((clean, overrides))
}

/// Build the final config: file or defaults, then key overrides, then the
/// dedicated flags, then the desk-scale presets.
fn assemble(
    kind: ExperimentKind,
    args: &RunArgs,
    overrides: &[(String, String)],
) -> Result<ExperimentConfig, RunError> {
    let mut doc = match &args.config {
        Some(path) => config::load_document(path)?,
        None => serde_json::to_value(ExperimentConfig::defaults(kind))
            .map_err(|e| RunError::config(format!("default config serialisation failed: {e}")))?,
    };
    if let Some(obj) = doc.as_object_mut() {
        obj.entry("experiment".to_string())
            .or_insert_with(|| serde_json::Value::String(kind.name().to_string()));
    }
    config::apply_overrides(&mut doc, overrides)?;
    let mut cfg = config::from_document(doc)?;
    if cfg.experiment != kind {
        return Err(RunError::config(format!(
            "config file drives '{}' but the '{}' subcommand was invoked",
            cfg.experiment.name(),
            kind.name()
        )));
    }
    if let Some(seed) = args.seed {
        cfg.seed = seed;
    }
    if let Some(out) = &args.out {
        cfg.output_dir = out.clone();
    }
    if args.desk_scale {
        cfg.desk_scale = true;
    }
    cfg.apply_desk_scale();
    Ok(cfg)
}

fn configure_threads(requested: Option<usize>) -> Result<(), RunError> {
    let n = match requested {
        Some(n) => Some(n),
        None => match std::env::var("NFDM_LAB_THREADS") {
            Ok(s) => Some(s.trim().parse::<usize>().map_err(|_| {
                RunError::config(format!("NFDM_LAB_THREADS is not a thread count: {s:?}"))
            })?),
            Err(_) => None,
        },
    };
    if let Some(n) = n {
        if n == 0 {
            return Err(RunError::config("thread count must be positive"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| RunError::config(format!("cannot configure thread pool: {e}")))?;
    }
    Ok(())
}

fn run(kind: ExperimentKind, args: &RunArgs, overrides: &[(String, String)]) -> Result<(), RunError> {
    let started = Instant::now();
    configure_threads(args.threads)?;
    let cfg = assemble(kind, args, overrides)?;
    let reporter = Reporter::new(&cfg.output_dir, cfg.experiment.name())?;
    let (rows, outcome) = experiments::execute(&cfg);
    // Flush whatever was computed even when the run failed part-way.
    let flushed = reporter.write_rows(&rows);
    let manifest = reporter.write_manifest(&cfg, rows.len(), started.elapsed().as_secs_f64());
    outcome.and(flushed).and(manifest)?;
    println!(
        "{}: {} rows -> {}",
        cfg.experiment.name(),
        rows.len(),
        reporter.csv_path().display()
    );
    Ok(())
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let (clean, overrides) = match split_overrides(&argv) {
        Ok(parts) => parts,
        Err(e) => {
            eprintln!("{e}");
            return ExitCode::from(e.exit_code());
        }
    };
    // clap exits with code 2 on usage errors, matching the config-error
    // contract, and 0 for --help/--version.
    let cli = Cli::parse_from(&clean);
    let kind = cli.command.kind();
    let args = cli.command.args();
    match run(kind, args, &overrides) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code())
        }
    }
}
