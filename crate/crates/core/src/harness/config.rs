use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::cluster::ClusterKind;
use crate::noise::NoiseChannel;
use crate::teleport::ProtocolConfig;
use crate::tomography::CanonicalInput;
use crate::{Error, Result};

pub const DEFAULT_SHOTS: u64 = 8192;
pub const DEFAULT_REPS: u32 = 10;

/// Largest chain the harness will simulate (the register has `N + 1` qubits and
/// `2^N` branches).
pub const MAX_CHAIN_QUBITS: usize = 16;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// True expectation values, no sampling.
    #[default]
    Exact,
    Sampled,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
}

/// Which state the witness is evaluated on.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WitnessState {
    /// The ideal cluster state of the configured topology.
    #[default]
    Cluster,
    /// `|+>^{⊗N}`.
    Product,
}

macro_rules! lowercase_enum_str {
    ($t:ty { $($v:ident => $s:literal),+ $(,)? }) => {
        impl fmt::Display for $t {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(match self { $(Self::$v => $s),+ })
            }
        }

        impl FromStr for $t {
            type Err = Error;

            fn from_str(s: &str) -> Result<Self> {
                match s.to_ascii_lowercase().as_str() {
                    $($s => Ok(Self::$v),)+
                    _ => Err(Error::Config(format!(
                        "unknown value `{s}`, expected one of: {}",
                        [$($s),+].join(", ")
                    ))),
                }
            }
        }
    };
}

lowercase_enum_str!(Mode { Exact => "exact", Sampled => "sampled" });
lowercase_enum_str!(OutputFormat { Json => "json", Csv => "csv" });
lowercase_enum_str!(WitnessState { Cluster => "cluster", Product => "product" });

/// Grid of a fidelity sweep.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepGrid {
    pub protocols: Vec<ClusterKind>,
    pub n: Vec<usize>,
}

impl Default for SweepGrid {
    fn default() -> Self {
        Self {
            protocols: vec![ClusterKind::Box],
            n: vec![4, 6, 8, 10, 12],
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessOptions {
    pub state: WitnessState,
    /// Allow `(N-1)·I - Σ K_a` for sizes other than six.
    pub generalized: bool,
    /// Attach a witness section to teleport reports.
    pub with_teleport: bool,
}

/// Everything a command needs. Missing fields take their defaults, so a config
/// file may list only what it changes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub protocol: ClusterKind,
    pub n: usize,
    pub mode: Mode,
    pub shots: u64,
    pub reps: u32,
    pub seed: Option<u64>,
    pub noise: Option<NoiseChannel>,
    pub out: Option<PathBuf>,
    pub format: OutputFormat,
    pub witness: WitnessOptions,
    pub sweep: SweepGrid,
    /// Process-matrix file for `noise-compare`; a fresh run is used when absent.
    pub chi: Option<PathBuf>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            protocol: ClusterKind::Box,
            n: 6,
            mode: Mode::Exact,
            shots: DEFAULT_SHOTS,
            reps: DEFAULT_REPS,
            seed: None,
            noise: None,
            out: None,
            format: OutputFormat::Json,
            witness: WitnessOptions::default(),
            sweep: SweepGrid::default(),
            chi: None,
        }
    }
}

/// Values given on the command line; each one replaces the file value.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ConfigOverrides {
    pub protocol: Option<ClusterKind>,
    pub n: Option<usize>,
    pub mode: Option<Mode>,
    pub shots: Option<u64>,
    pub reps: Option<u32>,
    pub seed: Option<u64>,
    pub noise: Option<NoiseChannel>,
    pub out: Option<PathBuf>,
    pub format: Option<OutputFormat>,
    pub witness_state: Option<WitnessState>,
    pub generalized: Option<bool>,
    pub with_witness: Option<bool>,
    pub sweep_protocols: Option<Vec<ClusterKind>>,
    pub sweep_n: Option<Vec<usize>>,
    pub chi: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))
    }

    /// Loads `file` (or the defaults) and applies `overrides`, without validating.
    pub fn resolve(file: Option<&Path>, overrides: ConfigOverrides) -> Result<Self> {
        let mut c = match file {
            Some(p) => Self::from_file(p)?,
            None => Self::default(),
        };
        let o = overrides;
        macro_rules! set {
            ($($field:ident => $target:expr),+ $(,)?) => {
                $(if let Some(v) = o.$field { $target = v; })+
            };
        }
        set!(
            protocol => c.protocol,
            n => c.n,
            mode => c.mode,
            shots => c.shots,
            reps => c.reps,
            format => c.format,
            witness_state => c.witness.state,
            generalized => c.witness.generalized,
            with_witness => c.witness.with_teleport,
            sweep_protocols => c.sweep.protocols,
            sweep_n => c.sweep.n,
        );
        if o.seed.is_some() {
            c.seed = o.seed;
        }
        if o.noise.is_some() {
            c.noise = o.noise;
        }
        if o.out.is_some() {
            c.out = o.out;
        }
        if o.chi.is_some() {
            c.chi = o.chi;
        }
        Ok(c)
    }

    /// Checks sampling parameters; protocol sizes are checked per command.
    pub fn validate(&self) -> Result<()> {
        if self.mode == Mode::Sampled {
            if self.seed.is_none() {
                return Err(Error::Config("sampled mode requires a seed (--seed)".into()));
            }
            if self.shots == 0 || self.reps == 0 {
                return Err(Error::Config("shots and reps must be at least 1".into()));
            }
        }
        Ok(())
    }

    /// Seed for sampled runs; zero in exact mode, where it is unused.
    pub fn seed_or_default(&self) -> u64 {
        self.seed.unwrap_or(0)
    }

    pub fn protocol_config(&self, kind: ClusterKind, n: usize, input: CanonicalInput) -> Result<ProtocolConfig> {
        check_protocol_size(kind, n)?;
        ProtocolConfig::new(kind, n, input)
    }
}

pub(crate) fn check_protocol_size(kind: ClusterKind, n: usize) -> Result<()> {
    if kind == ClusterKind::Chain && n > MAX_CHAIN_QUBITS {
        return Err(Error::Config(format!(
            "chain runs are limited to N <= {MAX_CHAIN_QUBITS}, got {n}"
        )));
    }
    ProtocolConfig::new(kind, n, CanonicalInput::Zero).map(|_| ())
}
