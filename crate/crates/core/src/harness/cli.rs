//! Command-line front end. The binary only forwards its arguments to [`run`].

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::cluster::ClusterKind;
use crate::noise::NoiseChannel;
use crate::{Error, Result};

use super::config::{ConfigOverrides, ExperimentConfig, Mode, OutputFormat, WitnessState};
use super::report::{cmd_noise_compare, cmd_sweep, cmd_teleport, cmd_witness, write_report, write_sweep};

#[derive(Debug, Parser)]
#[command(name = "cluster-teleport", version, about = "Networking teleportation over box and chain cluster states")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// JSON config file; flags override its values.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// exact | sampled
    #[arg(long)]
    pub mode: Option<Mode>,
    #[arg(long)]
    pub shots: Option<u64>,
    #[arg(long)]
    pub reps: Option<u32>,
    /// Required in sampled mode.
    #[arg(long)]
    pub seed: Option<u64>,
    /// depolarizing | phase-damping | amplitude-damping, optionally `:strength`.
    #[arg(long)]
    pub noise: Option<NoiseChannel>,
    /// Output file (stdout if omitted).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// json | csv (csv only for sweep)
    #[arg(long)]
    pub format: Option<OutputFormat>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Teleport the four tomography inputs and reconstruct the process.
    Teleport {
        /// box | chain
        #[arg(long)]
        protocol: Option<ClusterKind>,
        #[arg(long)]
        n: Option<usize>,
        /// Also evaluate the entanglement witness of the cluster.
        #[arg(long)]
        with_witness: bool,
        /// Allow the generalized witness for N != 6.
        #[arg(long)]
        generalized: bool,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Evaluate the genuine multipartite entanglement witness.
    Witness {
        #[arg(long)]
        protocol: Option<ClusterKind>,
        #[arg(long)]
        n: Option<usize>,
        /// cluster | product
        #[arg(long)]
        state: Option<WitnessState>,
        #[arg(long)]
        generalized: bool,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Compare a process matrix with the default noise channels.
    NoiseCompare {
        /// Process matrix or teleport report; a fresh run is used if omitted.
        #[arg(long)]
        chi: Option<PathBuf>,
        #[arg(long)]
        protocol: Option<ClusterKind>,
        #[arg(long)]
        n: Option<usize>,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Process fidelity over a grid of protocols and sizes.
    Sweep {
        /// Comma-separated, e.g. `box,chain`.
        #[arg(long, value_delimiter = ',')]
        protocol: Vec<ClusterKind>,
        /// Comma-separated, e.g. `4,6,8`.
        #[arg(long, value_delimiter = ',')]
        n: Vec<usize>,
        #[command(flatten)]
        common: CommonArgs,
    },
}

fn base_overrides(c: &CommonArgs) -> ConfigOverrides {
    ConfigOverrides {
        mode: c.mode,
        shots: c.shots,
        reps: c.reps,
        seed: c.seed,
        noise: c.noise.clone(),
        out: c.out.clone(),
        format: c.format,
        ..Default::default()
    }
}

fn non_empty<T>(v: Vec<T>) -> Option<Vec<T>> {
    (!v.is_empty()).then_some(v)
}

fn json_only(cfg: &ExperimentConfig, command: &str) -> Result<()> {
    if cfg.format == OutputFormat::Csv {
        return Err(Error::Config(format!("csv output is only available for sweep, not {command}")));
    }
    Ok(())
}

/// Resolves the configuration of a parsed command line and runs it.
pub fn execute(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Teleport { protocol, n, with_witness, generalized, common } => {
            let o = ConfigOverrides {
                protocol,
                n,
                with_witness: with_witness.then_some(true),
                generalized: generalized.then_some(true),
                ..base_overrides(&common)
            };
            let cfg = ExperimentConfig::resolve(common.config.as_deref(), o)?;
            json_only(&cfg, "teleport")?;
            write_report(&cmd_teleport(&cfg)?, cfg.out.as_deref())
        }
        Command::Witness { protocol, n, state, generalized, common } => {
            let o = ConfigOverrides {
                protocol,
                n,
                witness_state: state,
                generalized: generalized.then_some(true),
                ..base_overrides(&common)
            };
            let cfg = ExperimentConfig::resolve(common.config.as_deref(), o)?;
            json_only(&cfg, "witness")?;
            write_report(&cmd_witness(&cfg)?, cfg.out.as_deref())
        }
        Command::NoiseCompare { chi, protocol, n, common } => {
            let o = ConfigOverrides {
                protocol,
                n,
                chi,
                ..base_overrides(&common)
            };
            let cfg = ExperimentConfig::resolve(common.config.as_deref(), o)?;
            json_only(&cfg, "noise-compare")?;
            write_report(&cmd_noise_compare(&cfg)?, cfg.out.as_deref())
        }
        Command::Sweep { protocol, n, common } => {
            let o = ConfigOverrides {
                sweep_protocols: non_empty(protocol),
                sweep_n: non_empty(n),
                ..base_overrides(&common)
            };
            let cfg = ExperimentConfig::resolve(common.config.as_deref(), o)?;
            write_sweep(&cmd_sweep(&cfg)?, cfg.out.as_deref())
        }
    }
}

/// Parses `args` (including the program name) and runs the command. Returns the
/// process exit code: 0 on success, 1 for usage and configuration errors, 2 for
/// numerical invariant violations.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match execute(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
