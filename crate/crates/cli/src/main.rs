//! `cvtomo`: run experiment configs and figure presets, writing plain-text
//! data files and a manifest.
//!
//! Exit status is 0 on success, 2 when a configuration (or preset name) fails
//! validation and 1 for any failure while running.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Parser, Subcommand};
use cvtomo::experiments::{
    list_presets, load_config, preset, resolve_output_dir, run, ExperimentConfig, RunOptions, OUTPUT_DIR_ENV,
};
use cvtomo::Error;

#[derive(Debug, Parser)]
#[command(name = "cvtomo", version, about = "Optical tomograms and entanglement indicators for quantum-optics models")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run a config file or a named preset.
    #[command(after_help = format!(
        "Output goes to <DIR>/<name>/. DIR is --out, else output.dir from the config, \
         else ${OUTPUT_DIR_ENV}, else ./cvtomo-out. The manifest timestamp is \
         $SOURCE_DATE_EPOCH when set."
    ))]
    Run {
        /// Configuration file.
        #[arg(required_unless_present = "preset", conflicts_with = "preset")]
        config: Option<PathBuf>,
        /// Preset name (see `list-presets`).
        #[arg(long)]
        preset: Option<String>,
        /// Parent output directory.
        #[arg(long, value_name = "DIR")]
        out: Option<PathBuf>,
    },
    /// Print the available presets.
    ListPresets,
    /// Parse and validate a config file without running it.
    Validate { config: PathBuf },
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::Config(_) => 2,
        _ => 1,
    }
}

fn timestamp() -> u64 {
    if let Some(epoch) = std::env::var("SOURCE_DATE_EPOCH").ok().and_then(|s| s.trim().parse().ok()) {
        return epoch;
    }
    SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0)
}

fn run_config(config: ExperimentConfig, out: Option<&Path>) -> cvtomo::Result<()> {
    let options = RunOptions {
        out_dir: resolve_output_dir(out, &config),
        timestamp: timestamp(),
    };
    let bundle = run(&config, &options)?;
    println!("wrote {} files to {}", bundle.files.len() + 1, bundle.dir.display());
    Ok(())
}

fn execute(command: Command) -> cvtomo::Result<()> {
    match command {
        Command::Run { config, preset: name, out } => {
            let config = match (config, name) {
                (Some(path), _) => load_config(&path)?,
                (None, Some(name)) => preset(&name)?.config()?,
                (None, None) => unreachable!("clap requires a config or a preset"),
            };
            run_config(config, out.as_deref())
        }
        Command::ListPresets => {
            print!("{}", list_presets());
            Ok(())
        }
        Command::Validate { config } => {
            let cfg = load_config(&config)?;
            println!("{}: ok ({} model, {} time points)", config.display(), cfg.model.name(), cfg.times().len());
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code(&err))
        }
    }
}
