use std::io::Write;
use std::path::Path;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::cluster::{build_topology, prepare_cluster, ClusterKind};
use crate::noise::{compare_with_default_channels, ChannelComparison, NoiseChannel};
use crate::qsim::{derive_seed, expectation, StateVector};
use crate::teleport::{post_selected_state, run_protocol_exact, run_protocol_sampled};
use crate::tomography::{
    classify, fidelity_sensitivity, process_fidelity, reconstruct_process, state_fidelity, CanonicalInput,
    DensityMatrix1Q, ProcessMatrix, TomographyOutputs, CLASSICAL_AVG_STATE_FIDELITY,
    CLASSICAL_PROCESS_FIDELITY, MATRIX_TOL,
};
use crate::witness::{build_witness, evaluate_exact, evaluate_sampled, MeasurementSetting};
use crate::{Error, Result};

use super::config::{check_protocol_size, ExperimentConfig, Mode, OutputFormat, WitnessState};

pub const SCHEMA_VERSION: u32 = 1;

/// Stream index of the witness run attached to a teleport report; inputs use
/// `0..4`.
const WITNESS_STREAM: u64 = 4;

/// Tomography result for one canonical input.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InputReport {
    pub input: CanonicalInput,
    pub branches: usize,
    /// Post-selected `(<X>, <Y>, <Z>)` before any positivity projection.
    pub bloch: [f64; 3],
    pub bloch_error: [f64; 3],
    pub rho: DensityMatrix1Q,
    pub state_fidelity: f64,
    pub state_fidelity_error: f64,
}

/// Process and average state fidelity with their errors and the classical
/// benchmarks.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FidelitySummary {
    pub f_process: f64,
    pub f_process_error: f64,
    pub f_avg_state: f64,
    pub f_avg_state_error: f64,
    pub f_c_threshold: f64,
    pub f_s_threshold: f64,
    pub surpasses_classical: bool,
}

/// Full tomography of one protocol instance.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TeleportEvaluation {
    pub protocol: ClusterKind,
    pub n: usize,
    pub inputs: Vec<InputReport>,
    pub chi: ProcessMatrix,
    pub chi_min_eigenvalue: f64,
    /// Set when negative eigenvalues of the raw χ were clipped.
    pub chi_clipped: bool,
    #[serde(flatten)]
    pub fidelity: FidelitySummary,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TeleportReport {
    pub schema_version: u32,
    pub command: String,
    pub config: ExperimentConfig,
    #[serde(flatten)]
    pub evaluation: TeleportEvaluation,
    pub channel_fidelities: ChannelComparison,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessResult>,
    pub wall_clock_seconds: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermReport {
    pub pauli: String,
    pub coefficient: f64,
    pub setting: String,
    pub value: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WitnessResult {
    pub protocol: ClusterKind,
    pub n: usize,
    pub state: WitnessState,
    /// Sizes other than six use the generalized operator.
    pub extrapolated: bool,
    pub value: f64,
    pub error: f64,
    pub exact_value: f64,
    pub settings: Vec<MeasurementSetting>,
    pub terms: Vec<TermReport>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub schema_version: u32,
    pub command: String,
    pub config: ExperimentConfig,
    #[serde(flatten)]
    pub result: WitnessResult,
    pub wall_clock_seconds: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NoiseCompareReport {
    pub schema_version: u32,
    pub command: String,
    pub config: ExperimentConfig,
    /// `"file"` or `"run"`.
    pub source: String,
    pub chi: ProcessMatrix,
    /// Fidelity of χ with the ideal identity process.
    pub f_process: f64,
    pub channel_fidelities: ChannelComparison,
    pub wall_clock_seconds: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub protocol: ClusterKind,
    pub n: usize,
    pub mode: Mode,
    pub noise: Option<String>,
    pub f_process: f64,
    pub f_process_error: f64,
    pub f_avg_state: f64,
    pub f_avg_state_error: f64,
    pub f_c_threshold: f64,
    pub surpasses_classical: bool,
    pub chi_clipped: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub schema_version: u32,
    pub command: String,
    pub config: ExperimentConfig,
    pub rows: Vec<SweepRow>,
    pub wall_clock_seconds: f64,
}

fn input_bloch(input: CanonicalInput) -> [f64; 3] {
    DensityMatrix1Q::from_pure(&input.state())
        .expect("one-qubit state")
        .bloch()
}

/// Runs all four canonical inputs through the protocol and reconstructs χ.
///
/// Exact mode uses the branch-weighted output states; sampled mode post-selects
/// shot counts, with input `k` drawing from `derive_seed(seed, k)`. Errors are
/// counting errors propagated to first order.
pub fn evaluate_teleport(
    kind: ClusterKind,
    n: usize,
    mode: Mode,
    shots: u64,
    reps: u32,
    seed: u64,
    noise: Option<&NoiseChannel>,
) -> Result<TeleportEvaluation> {
    check_protocol_size(kind, n)?;
    let mut inputs = Vec::with_capacity(4);
    for input in CanonicalInput::ALL {
        let pcfg = crate::teleport::ProtocolConfig::new(kind, n, input)?;
        let (bloch, bloch_error, rho, branches) = match mode {
            Mode::Exact => {
                let records = run_protocol_exact(&pcfg)?;
                let total: f64 = records.iter().map(|r| r.probability).sum();
                if (total - 1.0).abs() > 1e-9 {
                    return Err(Error::Invariant(format!("branch probabilities sum to {total}")));
                }
                let rho = post_selected_state(&records, noise)
                    .map_err(|e| Error::Invariant(format!("post-selected output: {e}")))?;
                (rho.bloch(), [0.0; 3], rho, records.len())
            }
            Mode::Sampled => {
                let run = run_protocol_sampled(&pcfg, shots, reps, derive_seed(seed, input.index() as u64), noise)?;
                let est = run.corrected_estimate()?;
                (est.bloch, est.sigma, est.density()?, run.settings[0].branches.len())
            }
        };
        let r_in = input_bloch(input);
        let state_fidelity_error = 0.5
            * (0..3)
                .map(|a| (r_in[a] * bloch_error[a]).powi(2))
                .sum::<f64>()
                .sqrt();
        inputs.push(InputReport {
            input,
            branches,
            bloch,
            bloch_error,
            state_fidelity: state_fidelity(&input.state(), &rho)?,
            state_fidelity_error,
            rho,
        });
    }

    let outputs = TomographyOutputs::from_fn(|i| Ok(inputs[i.index()].rho))?;
    let rec = reconstruct_process(&outputs)?;
    if mode == Mode::Exact && rec.min_eigenvalue < -MATRIX_TOL {
        return Err(Error::Invariant(format!(
            "exact process matrix has eigenvalue {:.3e}",
            rec.min_eigenvalue
        )));
    }
    let ideal = ProcessMatrix::identity_process();
    let f = process_fidelity(&rec.chi, &ideal);
    let grad = fidelity_sensitivity(&ideal)?;
    let f_err = inputs
        .iter()
        .enumerate()
        .flat_map(|(k, r)| (0..3).map(move |a| (grad[k][a] * r.bloch_error[a]).powi(2)))
        .sum::<f64>()
        .sqrt();
    let class = classify(f.clamp(0.0, 1.0))?;
    Ok(TeleportEvaluation {
        protocol: kind,
        n,
        inputs,
        chi: rec.chi,
        chi_min_eigenvalue: rec.min_eigenvalue,
        chi_clipped: rec.clipped,
        fidelity: FidelitySummary {
            f_process: class.f_process,
            f_process_error: f_err,
            f_avg_state: class.f_avg_state,
            f_avg_state_error: 2.0 * f_err / 3.0,
            f_c_threshold: CLASSICAL_PROCESS_FIDELITY,
            f_s_threshold: CLASSICAL_AVG_STATE_FIDELITY,
            surpasses_classical: class.surpasses_classical,
        },
    })
}

/// Evaluates the witness of the configured topology on the cluster or product
/// state.
pub fn evaluate_witness(cfg: &ExperimentConfig, kind: ClusterKind, n: usize, seed: u64) -> Result<WitnessResult> {
    let w = build_witness(kind, n, cfg.witness.generalized)?;
    let state = match cfg.witness.state {
        WitnessState::Cluster => prepare_cluster(&build_topology(kind, n)?)?,
        WitnessState::Product => StateVector::plus_n(n)?,
    };
    let exact_value = evaluate_exact(&w, &state)?;
    let owner = w.term_settings()?;
    let (value, error, values) = match cfg.mode {
        Mode::Exact => {
            let values = w
                .terms
                .iter()
                .map(|t| expectation(&state, &t.pauli))
                .collect::<Result<Vec<_>>>()?;
            (exact_value, 0.0, values)
        }
        Mode::Sampled => {
            let est = evaluate_sampled(&w, &state, cfg.shots, cfg.reps, seed)?;
            (est.value, est.error, est.term_values)
        }
    };
    let terms = w
        .terms
        .iter()
        .zip(&owner)
        .zip(values)
        .map(|((t, &k), value)| TermReport {
            pauli: t.pauli.to_string(),
            coefficient: t.coefficient,
            setting: w.settings[k].to_string(),
            value,
        })
        .collect();
    Ok(WitnessResult {
        protocol: kind,
        n,
        state: cfg.witness.state,
        extrapolated: w.extrapolated,
        value,
        error,
        exact_value,
        settings: w.settings.clone(),
        terms,
    })
}

fn elapsed(start: Instant) -> f64 {
    start.elapsed().as_secs_f64()
}

/// Teleportation with state and process tomography of the four canonical inputs.
pub fn cmd_teleport(cfg: &ExperimentConfig) -> Result<TeleportReport> {
    cfg.validate()?;
    let start = Instant::now();
    let seed = cfg.seed_or_default();
    let evaluation = evaluate_teleport(cfg.protocol, cfg.n, cfg.mode, cfg.shots, cfg.reps, seed, cfg.noise.as_ref())?;
    let channel_fidelities = compare_with_default_channels(&evaluation.chi)?;
    let witness = if cfg.witness.with_teleport {
        Some(evaluate_witness(cfg, cfg.protocol, cfg.n, derive_seed(seed, WITNESS_STREAM))?)
    } else {
        None
    };
    Ok(TeleportReport {
        schema_version: SCHEMA_VERSION,
        command: "teleport".into(),
        config: cfg.clone(),
        evaluation,
        channel_fidelities,
        witness,
        wall_clock_seconds: elapsed(start),
    })
}

pub fn cmd_witness(cfg: &ExperimentConfig) -> Result<WitnessReport> {
    cfg.validate()?;
    let start = Instant::now();
    let result = evaluate_witness(cfg, cfg.protocol, cfg.n, cfg.seed_or_default())?;
    Ok(WitnessReport {
        schema_version: SCHEMA_VERSION,
        command: "witness".into(),
        config: cfg.clone(),
        result,
        wall_clock_seconds: elapsed(start),
    })
}

/// Reads χ from a bare process-matrix file or from the `chi` field of a
/// teleport report.
fn read_chi(path: &Path) -> Result<ProcessMatrix> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
    let mut value: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
    if let Some(chi) = value.get_mut("chi") {
        value = chi.take();
    }
    serde_json::from_value(value)
        .map_err(|e| Error::Config(format!("{} does not hold a valid process matrix: {e}", path.display())))
}

/// Compares a process matrix with the default depolarizing, amplitude-damping
/// and phase-damping channels. χ comes from `cfg.chi` or from a fresh run.
pub fn cmd_noise_compare(cfg: &ExperimentConfig) -> Result<NoiseCompareReport> {
    cfg.validate()?;
    let start = Instant::now();
    let (source, chi) = match &cfg.chi {
        Some(path) => ("file", read_chi(path)?),
        None => {
            let ev = evaluate_teleport(
                cfg.protocol,
                cfg.n,
                cfg.mode,
                cfg.shots,
                cfg.reps,
                cfg.seed_or_default(),
                cfg.noise.as_ref(),
            )?;
            ("run", ev.chi)
        }
    };
    Ok(NoiseCompareReport {
        schema_version: SCHEMA_VERSION,
        command: "noise-compare".into(),
        config: cfg.clone(),
        source: source.into(),
        f_process: process_fidelity(&chi, &ProcessMatrix::identity_process()),
        channel_fidelities: compare_with_default_channels(&chi)?,
        chi,
        wall_clock_seconds: elapsed(start),
    })
}

/// Process fidelity for every `(protocol, n)` of the sweep grid. Entry `e`
/// (row order) samples from `derive_seed(seed, e)`.
pub fn cmd_sweep(cfg: &ExperimentConfig) -> Result<SweepReport> {
    cfg.validate()?;
    if cfg.sweep.protocols.is_empty() || cfg.sweep.n.is_empty() {
        return Err(Error::Config("sweep needs at least one protocol and one n".into()));
    }
    let grid: Vec<(ClusterKind, usize)> = cfg
        .sweep
        .protocols
        .iter()
        .flat_map(|&k| cfg.sweep.n.iter().map(move |&n| (k, n)))
        .collect();
    for &(k, n) in &grid {
        check_protocol_size(k, n)?;
    }
    let start = Instant::now();
    let seed = cfg.seed_or_default();
    let rows = grid
        .iter()
        .enumerate()
        .map(|(e, &(kind, n))| {
            let ev = evaluate_teleport(kind, n, cfg.mode, cfg.shots, cfg.reps, derive_seed(seed, e as u64), cfg.noise.as_ref())?;
            Ok(SweepRow {
                protocol: kind,
                n,
                mode: cfg.mode,
                noise: cfg.noise.as_ref().map(|c| c.to_string()),
                f_process: ev.fidelity.f_process,
                f_process_error: ev.fidelity.f_process_error,
                f_avg_state: ev.fidelity.f_avg_state,
                f_avg_state_error: ev.fidelity.f_avg_state_error,
                f_c_threshold: ev.fidelity.f_c_threshold,
                surpasses_classical: ev.fidelity.surpasses_classical,
                chi_clipped: ev.chi_clipped,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepReport {
        schema_version: SCHEMA_VERSION,
        command: "sweep".into(),
        config: cfg.clone(),
        rows,
        wall_clock_seconds: elapsed(start),
    })
}

fn sink(out: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match out {
        Some(p) => Box::new(std::io::BufWriter::new(std::fs::File::create(p)?)),
        None => Box::new(std::io::stdout().lock()),
    })
}

/// Writes a report as pretty JSON to `out`, or to stdout.
pub fn write_report<T: Serialize>(report: &T, out: Option<&Path>) -> Result<()> {
    let mut w = sink(out)?;
    serde_json::to_writer_pretty(&mut w, report)?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}

/// Writes a sweep in the configured format.
pub fn write_sweep(report: &SweepReport, out: Option<&Path>) -> Result<()> {
    match report.config.format {
        OutputFormat::Json => write_report(report, out),
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(sink(out)?);
            for row in &report.rows {
                w.serialize(row)?;
            }
            w.flush()?;
            Ok(())
        }
    }
}
