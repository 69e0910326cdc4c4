//! Experiment orchestration behind the `cluster-teleport` binary: configuration,
//! the four commands and their reports.
//!
//! Every command returns a serializable report tagged with [`SCHEMA_VERSION`].
//! Reports are deterministic for a fixed configuration and seed except for the
//! `wall_clock_seconds` field.

pub mod cli;
mod config;
mod report;

pub use config::{
    ConfigOverrides, ExperimentConfig, Mode, OutputFormat, SweepGrid, WitnessOptions, WitnessState,
    DEFAULT_REPS, DEFAULT_SHOTS, MAX_CHAIN_QUBITS,
};
pub use report::{
    cmd_noise_compare, cmd_sweep, cmd_teleport, cmd_witness, evaluate_teleport, evaluate_witness,
    write_report, write_sweep, FidelitySummary, InputReport, NoiseCompareReport, SweepReport, SweepRow,
    TeleportEvaluation, TeleportReport, TermReport, WitnessReport, WitnessResult, SCHEMA_VERSION,
};
