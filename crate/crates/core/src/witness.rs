//! Genuine multipartite entanglement witnesses for six-qubit box and chain
//! cluster states, `W = 5·I - Σ K`, and their two-setting evaluation.
//!
//! Each term is a stabilizer generator of the cluster, so the ideal state gives
//! `<W> = -1`; a negative value certifies genuine six-partite entanglement. Sizes
//! other than six are available as `(N-1)·I - Σ_a K_a` behind an explicit flag
//! and are reported as extrapolated.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cluster::{build_topology, stabilizer_generators, ClusterKind, ClusterTopology};
use crate::qsim::{apply_1q, expectation, sample_counts_with, stream_rng, Pauli, PauliString, StateVector, Unitary1Q};
use crate::{Error, Result};

const BOX6_TERMS: [&str; 6] = ["XZZIII", "IZZXIZ", "ZXIZII", "IIZIXZ", "ZIXZZI", "IIIZZX"];
const CHAIN6_TERMS: [&str; 6] = ["XZIIII", "IIZXZI", "ZXZIII", "IIIZXZ", "IZXZII", "IIIIZX"];

/// `coefficient · pauli`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WitnessTerm {
    pub coefficient: f64,
    pub pauli: PauliString,
}

/// Product-basis measurement: one Pauli letter per qubit, no identities.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "PauliString", into = "PauliString")]
pub struct MeasurementSetting(PauliString);

impl MeasurementSetting {
    pub fn new(bases: PauliString) -> Result<Self> {
        if bases.labels().contains(&Pauli::I) {
            return Err(Error::Parse(format!("setting {bases} contains an identity")));
        }
        Ok(Self(bases))
    }

    pub fn bases(&self) -> &PauliString {
        &self.0
    }

    /// `true` if every non-identity letter of `term` matches this setting.
    pub fn covers(&self, term: &PauliString) -> bool {
        term.len() == self.0.len() && term.support().all(|q| term.get(q) == self.0.get(q))
    }
}

impl fmt::Display for MeasurementSetting {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl TryFrom<PauliString> for MeasurementSetting {
    type Error = Error;

    fn try_from(p: PauliString) -> Result<Self> {
        Self::new(p)
    }
}

impl From<MeasurementSetting> for PauliString {
    fn from(s: MeasurementSetting) -> PauliString {
        s.0
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WitnessOperator {
    pub kind: ClusterKind,
    pub n: usize,
    pub constant: f64,
    pub terms: Vec<WitnessTerm>,
    pub settings: Vec<MeasurementSetting>,
    /// Set for sizes other than six.
    pub extrapolated: bool,
}

impl WitnessOperator {
    /// Index of the first setting that covers each term.
    pub fn term_settings(&self) -> Result<Vec<usize>> {
        self.terms
            .iter()
            .map(|t| {
                self.settings
                    .iter()
                    .position(|s| s.covers(&t.pauli))
                    .ok_or_else(|| Error::UncoveredTerm(t.pauli.to_string()))
            })
            .collect()
    }
}

/// The two settings given by a 2-colouring of the graph: `X` on the class of
/// qubit 1 and `Z` on the other, then the complement.
pub fn two_coloring_settings(t: &ClusterTopology) -> [MeasurementSetting; 2] {
    let color = t.two_coloring();
    let setting = |x_class: bool| {
        let labels = (1..=t.n_qubits())
            .map(|a| if color[a] == x_class { Pauli::X } else { Pauli::Z })
            .collect();
        MeasurementSetting(PauliString::new(labels))
    };
    [setting(true), setting(false)]
}

/// Witness for the `kind` cluster on `n` qubits. Only `n = 6` is defined unless
/// `generalized` is set.
pub fn build_witness(kind: ClusterKind, n: usize, generalized: bool) -> Result<WitnessOperator> {
    if n != 6 && !generalized {
        return Err(Error::UnsupportedWitnessSize(n));
    }
    let topology = build_topology(kind, n)?;
    let paulis: Vec<PauliString> = if n == 6 {
        let table = match kind {
            ClusterKind::Box => BOX6_TERMS,
            ClusterKind::Chain => CHAIN6_TERMS,
        };
        table.iter().map(|s| s.parse()).collect::<Result<_>>()?
    } else {
        stabilizer_generators(&topology).into_iter().map(|s| s.pauli).collect()
    };
    let w = WitnessOperator {
        kind,
        n,
        constant: (n - 1) as f64,
        terms: paulis
            .into_iter()
            .map(|pauli| WitnessTerm { coefficient: -1.0, pauli })
            .collect(),
        settings: two_coloring_settings(&topology).to_vec(),
        extrapolated: n != 6,
    };
    w.term_settings()?;
    Ok(w)
}

fn check_size(w: &WitnessOperator, state: &StateVector) -> Result<()> {
    if state.n_qubits() != w.n {
        return Err(Error::LengthMismatch {
            expected: 1 << w.n,
            actual: state.dim(),
        });
    }
    Ok(())
}

/// `constant + Σ coefficient · <term>`.
pub fn evaluate_exact(w: &WitnessOperator, state: &StateVector) -> Result<f64> {
    check_size(w, state)?;
    w.terms.iter().try_fold(w.constant, |acc, t| {
        Ok(acc + t.coefficient * expectation(state, &t.pauli)?)
    })
}

/// Sampled witness value with its Poissonian counting error.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WitnessEstimate {
    pub value: f64,
    pub error: f64,
    /// Estimated `<term>` for each term, in order.
    pub term_values: Vec<f64>,
}

/// Outcome distribution of a product-basis measurement; index bits follow the
/// register order, bit set for eigenvalue `-1`.
fn setting_distribution(state: &StateVector, setting: &MeasurementSetting) -> Result<Vec<f64>> {
    let mut s = state.clone();
    for (q, p) in setting.bases().labels().iter().enumerate() {
        match p {
            Pauli::X => s = apply_1q(&s, &Unitary1Q::h(), q)?,
            Pauli::Y => s = apply_1q(&s, &(Unitary1Q::h() * Unitary1Q::sdg()), q)?,
            _ => {}
        }
    }
    Ok(s.amplitudes().iter().map(|a| a.norm_sqr()).collect())
}

/// Estimates the witness from `reps` batches of `shots` in each setting. Setting
/// `k` draws from stream `k` of `seed`. Each term gets the counting error
/// `1/sqrt(T)` for `T = shots·reps`, combined in quadrature.
pub fn evaluate_sampled(
    w: &WitnessOperator,
    state: &StateVector,
    shots: u64,
    reps: u32,
    seed: u64,
) -> Result<WitnessEstimate> {
    check_size(w, state)?;
    if shots == 0 || reps == 0 {
        return Err(Error::Config("shots and reps must be at least 1".into()));
    }
    let owner = w.term_settings()?;
    let total = shots * u64::from(reps);
    let mut counts = Vec::with_capacity(w.settings.len());
    for (k, setting) in w.settings.iter().enumerate() {
        let probs = setting_distribution(state, setting)?;
        let mut rng = stream_rng(seed, k as u64);
        let mut acc = vec![0u64; probs.len()];
        for _ in 0..reps {
            for (a, c) in acc.iter_mut().zip(sample_counts_with(&probs, shots, &mut rng)?) {
                *a += c;
            }
        }
        counts.push(acc);
    }

    let n = w.n;
    let mut value = w.constant;
    let mut variance = 0.0;
    let mut term_values = Vec::with_capacity(w.terms.len());
    for (t, &k) in w.terms.iter().zip(&owner) {
        let mask: usize = t.pauli.support().map(|q| 1 << (n - 1 - q)).sum();
        let signed: i64 = counts[k]
            .iter()
            .enumerate()
            .map(|(x, &c)| if (x & mask).count_ones().is_multiple_of(2) { c as i64 } else { -(c as i64) })
            .sum();
        let e = signed as f64 / total as f64;
        term_values.push(e);
        value += t.coefficient * e;
        variance += t.coefficient * t.coefficient / total as f64;
    }
    Ok(WitnessEstimate {
        value,
        error: variance.sqrt(),
        term_values,
    })
}
