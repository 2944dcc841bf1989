use clap::{Parser, Subcommand};
use nlflux_cli::commands;
use std::path::PathBuf;
use std::process::ExitCode;

/// Simulate 1-D conservation laws with nonlocal look-ahead/look-behind
/// traffic fluxes, compare models, and certify shock-formation thresholds.
#[derive(Parser)]
#[command(name = "nlflux", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one simulation and write snapshot/diagnostics CSVs plus a
    /// manifest.
    Simulate {
        /// JSON run configuration.
        #[arg(long)]
        config: PathBuf,
        /// Output directory.
        #[arg(long)]
        out: PathBuf,
        /// Also emit a gnuplot script referencing the snapshot CSVs.
        #[arg(long)]
        gnuplot: bool,
    },
    /// Run several configs sharing grid and scenario, sampled at one time
    /// into a wide CSV with a front-position summary.
    Compare {
        /// JSON config (repeat for each model).
        #[arg(long = "config", required = true)]
        configs: Vec<PathBuf>,
        /// Probe time.
        #[arg(long)]
        t: f64,
        /// Output CSV path.
        #[arg(long)]
        out: PathBuf,
        /// Density level for the front-position summary.
        #[arg(long, default_value_t = 0.1)]
        front_level: f64,
    },
    /// Evaluate a blow-up threshold for the config's initial data.
    Threshold {
        #[arg(long)]
        config: PathBuf,
        /// One of: const_ab, lin_ab, const_a.
        #[arg(long)]
        kind: String,
    },
    /// Rerun the scenario over a list of grid spacings and classify the
    /// gradient growth.
    Convergence {
        #[arg(long)]
        config: PathBuf,
        /// Comma-separated spacings, fractions allowed: "1/50,1/100,1/200".
        #[arg(long)]
        dx: String,
        /// Probe time.
        #[arg(long)]
        t: f64,
        /// Output CSV path.
        #[arg(long)]
        out: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Simulate {
            config,
            out,
            gnuplot,
        } => commands::cmd_simulate(&config, &out, gnuplot),
        Command::Compare {
            configs,
            t,
            out,
            front_level,
        } => commands::cmd_compare(&configs, t, &out, front_level),
        Command::Threshold { config, kind } => commands::cmd_threshold(&config, &kind),
        Command::Convergence { config, dx, t, out } => {
            commands::cmd_convergence(&config, &dx, t, &out)
        }
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
