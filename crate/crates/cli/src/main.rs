use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use prefloop_cli::manifest::{expand, parse_manifest, serialize_manifest, ExperimentManifest};
use prefloop_cli::presets;
use prefloop_cli::runner::{run_experiment, RunOptions};

/// Closed-loop simulator for recommender/user preference dynamics.
#[derive(Parser)]
#[command(name = "prefloop", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an experiment manifest.
    Run {
        /// Path to a TOML manifest.
        manifest: PathBuf,
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// Run a built-in preset (see list-presets).
    Preset {
        name: String,
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// List the built-in presets.
    ListPresets,
    /// Parse and validate a manifest without running it.
    Validate { manifest: PathBuf },
}

#[derive(Args)]
struct CommonOpts {
    /// Run only this seed instead of the manifest's seed list.
    #[arg(long)]
    seed: Option<u64>,
    /// Output directory (default: $PREFLOOP_OUT_DIR or ./prefloop-out).
    #[arg(long)]
    out_dir: Option<PathBuf>,
    /// Sweep worker count; 0 uses one worker per core.
    #[arg(long, default_value_t = 0)]
    parallelism: usize,
    /// Override the base config's step count.
    #[arg(long)]
    steps: Option<usize>,
}

const EXIT_RUN_FAILURE: u8 = 1;
const EXIT_CONFIG_ERROR: u8 = 2;

fn default_out_dir() -> PathBuf {
    std::env::var_os("PREFLOOP_OUT_DIR")
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from("prefloop-out"))
}

fn load_manifest(path: &PathBuf) -> Result<ExperimentManifest, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    parse_manifest(&text).map_err(|e| e.to_string())
}

fn execute(manifest: &ExperimentManifest, opts: &CommonOpts) -> ExitCode {
    let run_opts = RunOptions {
        out_dir: opts.out_dir.clone().unwrap_or_else(default_out_dir),
        parallelism: opts.parallelism,
        seed_override: opts.seed,
        steps_override: opts.steps,
    };
    match run_experiment(manifest, &run_opts) {
        Ok(report) => {
            for row in &report.rows {
                match &row.outcome {
                    Ok(summary) => println!(
                        "run config={} seed={}: ok engagement={:.4} entropy={:.4} magnitude={:.4}",
                        row.config_id,
                        row.seed,
                        summary.mean_engagement,
                        summary.consumption_entropy,
                        summary.mean_magnitude
                    ),
                    Err(e) => {
                        println!("run config={} seed={}: FAILED {e}", row.config_id, row.seed)
                    }
                }
            }
            println!(
                "wrote {} file(s) to {} ({} run(s), {} failure(s))",
                report.files.len(),
                report.out_dir.display(),
                report.rows.len(),
                report.failures
            );
            if report.failures > 0 {
                ExitCode::from(EXIT_RUN_FAILURE)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_RUN_FAILURE)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Run { manifest, opts } => match load_manifest(&manifest) {
            Ok(m) => {
                println!("manifest: {}", m.name);
                execute(&m, &opts)
            }
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(EXIT_CONFIG_ERROR)
            }
        },
        Command::Preset { name, opts } => match presets::find(&name) {
            Some(preset) => {
                let m = parse_manifest(preset.text).expect("embedded preset is valid");
                println!("preset: {} ({})", preset.name, preset.summary);
                execute(&m, &opts)
            }
            None => {
                eprintln!(
                    "error: unknown preset `{name}`; available: {}",
                    presets::PRESETS
                        .iter()
                        .map(|p| p.name)
                        .collect::<Vec<_>>()
                        .join(", ")
                );
                ExitCode::from(EXIT_CONFIG_ERROR)
            }
        },
        Command::ListPresets => {
            for preset in presets::PRESETS {
                println!("{:<12} {}", preset.name, preset.summary);
            }
            ExitCode::SUCCESS
        }
        Command::Validate { manifest } => match load_manifest(&manifest) {
            Ok(m) => {
                let runs = expand(&m).expect("parse_manifest already expanded");
                println!(
                    "manifest OK: {} ({} config(s) x {} seed(s) = {} run(s))",
                    m.name,
                    runs.len(),
                    m.seeds.len(),
                    runs.len() * m.seeds.len()
                );
                print!("{}", serialize_manifest(&m).expect("manifest serializes"));
                ExitCode::SUCCESS
            }
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(EXIT_CONFIG_ERROR)
            }
        },
    }
}
