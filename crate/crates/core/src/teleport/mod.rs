//! The box and chain networking teleportation protocols.
//!
//! Qubit 0 carries the input, Alice owns cluster qubit 1, the participants own
//! qubits `2..=N-1` and Bob owns qubit `N`. After Alice's Bell measurement the
//! participants measure their qubits in the bases returned by
//! [`participant_basis`], and Bob applies the correction computed from all
//! announced outcomes.

mod correction;
mod sampled;

pub use correction::{
    box_flip_letter, chain_flip_letter, correction_box, correction_chain, simplify,
    simplify_with_trace, BellOutcome, CorrectionOp, CorrectionWord, Letter, PauliCorrection,
    RewriteStep, Rule,
};
pub use sampled::{
    run_protocol_sampled, BranchTally, CorrectedEstimate, SampledRun, SettingTally,
    TOMOGRAPHY_SETTINGS,
};

use serde::{Deserialize, Serialize};

use crate::cluster::{build_topology, prepare_cluster, ClusterKind};
use crate::noise::{apply_channel, NoiseChannel};
use crate::qsim::{apply_cnot, apply_1q, measure_discard, Basis, StateVector, Unitary1Q, NORM_TOL};
use crate::tomography::{CanonicalInput, DensityMatrix1Q};
use crate::{Error, Result, C64};

/// Largest box size with a defined correction table.
pub const MAX_BOX_QUBITS: usize = 12;

/// Paths with a smaller probability are dropped during enumeration.
const ZERO_BRANCH: f64 = 1e-12;

/// State to be teleported.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum InputState {
    Canonical(CanonicalInput),
    Custom(StateVector),
}

impl InputState {
    pub fn state(&self) -> StateVector {
        match self {
            InputState::Canonical(c) => c.state(),
            InputState::Custom(s) => s.clone(),
        }
    }

    pub fn label(&self) -> String {
        match self {
            InputState::Canonical(c) => c.label().to_string(),
            InputState::Custom(_) => "custom".to_string(),
        }
    }
}

impl From<CanonicalInput> for InputState {
    fn from(c: CanonicalInput) -> Self {
        InputState::Canonical(c)
    }
}

/// Protocol, size and input of one teleportation run.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProtocolConfig {
    kind: ClusterKind,
    n: usize,
    input: InputState,
}

impl ProtocolConfig {
    pub fn new(kind: ClusterKind, n: usize, input: impl Into<InputState>) -> Result<Self> {
        let input = input.into();
        check_size(kind, n)?;
        if let InputState::Custom(s) = &input {
            if s.n_qubits() != 1 {
                return Err(Error::LengthMismatch {
                    expected: 2,
                    actual: s.dim(),
                });
            }
            if (s.norm() - 1.0).abs() > NORM_TOL {
                return Err(Error::NotNormalized(s.norm()));
            }
        }
        Ok(Self { kind, n, input })
    }

    pub fn kind(&self) -> ClusterKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn input(&self) -> &InputState {
        &self.input
    }
}

fn check_size(kind: ClusterKind, n: usize) -> Result<()> {
    build_topology(kind, n)?;
    if kind == ClusterKind::Box && n > MAX_BOX_QUBITS {
        return Err(Error::UnsupportedN(n));
    }
    Ok(())
}

/// Measurement basis of participant qubit `i`.
pub fn participant_basis(kind: ClusterKind, n: usize, i: usize) -> Result<Basis> {
    check_size(kind, n)?;
    if !(2..n).contains(&i) {
        return Err(Error::ParticipantOutOfRange { index: i, max: n - 1 });
    }
    Ok(match kind {
        ClusterKind::Box if i.is_multiple_of(2) || i == 3 => Basis::X,
        ClusterKind::Box => Basis::Z,
        ClusterKind::Chain => Basis::X,
    })
}

/// One outcome of Alice's Bell measurement.
#[derive(Clone, Debug)]
pub struct BellBranch {
    pub j: BellOutcome,
    pub probability: f64,
    /// State of qubits `2..` with qubits 0 and 1 removed; `None` if impossible.
    pub post_state: Option<StateVector>,
}

/// Bell measurement of qubits 0 and 1: CNOT(0→1), H(0), then Z on both.
pub fn bell_measure(state: &StateVector) -> Result<[BellBranch; 4]> {
    if state.n_qubits() < 2 {
        return Err(Error::InvalidQubitCount {
            kind: "bell measurement",
            n: state.n_qubits(),
            reason: "needs at least two qubits",
        });
    }
    let s = apply_cnot(state, 0, 1)?;
    let s = apply_1q(&s, &Unitary1Q::h(), 0)?;
    let mut out = Vec::with_capacity(4);
    for first in measure_discard(&s, 0, Basis::Z)? {
        let b0 = first.value == -1;
        match first.post_state {
            Some(rest) if rest.n_qubits() > 1 => {
                for second in measure_discard(&rest, 0, Basis::Z)? {
                    out.push(BellBranch {
                        j: BellOutcome::from_bits(b0, second.value == -1),
                        probability: first.probability * second.probability,
                        post_state: second.post_state,
                    });
                }
            }
            Some(rest) => {
                // two-qubit register: read the last qubit directly
                let a = rest.amplitudes();
                for (b1, amp) in [(false, a[0]), (true, a[1])] {
                    out.push(BellBranch {
                        j: BellOutcome::from_bits(b0, b1),
                        probability: first.probability * amp.norm_sqr(),
                        post_state: None,
                    });
                }
            }
            None => {
                for b1 in [false, true] {
                    out.push(BellBranch {
                        j: BellOutcome::from_bits(b0, b1),
                        probability: 0.0,
                        post_state: None,
                    });
                }
            }
        }
    }
    Ok(out.try_into().expect("four branches"))
}

/// One leaf of the protocol: Alice's and the participants' outcomes, Bob's
/// state before and after the correction.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BranchRecord {
    pub j: BellOutcome,
    /// Outcomes of participants `2..=N-1`, in qubit order.
    pub m: Vec<i8>,
    pub probability: f64,
    pub bob_state: StateVector,
    pub word: CorrectionWord,
    pub correction: CorrectionOp,
    pub corrected_state: StateVector,
    /// `|<ψ_in|corrected>|²`.
    pub fidelity: f64,
}

/// Enumerates every branch with nonzero probability, measuring participants in
/// ascending qubit order. Records are sorted by `(j, m)` with `+1` before `-1`.
pub fn run_protocol_exact(cfg: &ProtocolConfig) -> Result<Vec<BranchRecord>> {
    let order: Vec<usize> = (2..cfg.n).collect();
    run_protocol_exact_in_order(cfg, &order)
}

/// Like [`run_protocol_exact`], with the participants measured in `order`
/// (a permutation of `2..=N-1`).
pub fn run_protocol_exact_in_order(cfg: &ProtocolConfig, order: &[usize]) -> Result<Vec<BranchRecord>> {
    let n = cfg.n;
    let mut sorted = order.to_vec();
    sorted.sort_unstable();
    if sorted != (2..n).collect::<Vec<_>>() {
        return Err(Error::Config(format!(
            "measurement order must be a permutation of participants 2..={}",
            n - 1
        )));
    }
    let input = cfg.input.state();
    let topology = build_topology(cfg.kind, n)?;
    let register = input.tensor(&prepare_cluster(&topology)?);

    let mut leaves = Vec::new();
    for bell in bell_measure(&register)? {
        let Some(state) = bell.post_state else { continue };
        if bell.probability < ZERO_BRANCH {
            continue;
        }
        let labels: Vec<usize> = (2..=n).collect();
        descend(cfg, order, state, labels, vec![0; n - 2], bell.probability, bell.j, &mut leaves)?;
    }
    leaves.sort_by_key(|l| (l.j, l.m.iter().map(|&v| v == -1).collect::<Vec<_>>()));

    leaves
        .into_iter()
        .map(|leaf| {
            let word = match cfg.kind {
                ClusterKind::Box => correction_box(leaf.j, &leaf.m, n)?,
                ClusterKind::Chain => correction_chain(leaf.j, &leaf.m)?,
            };
            let correction = simplify(&word);
            let corrected_state = correction.apply(&leaf.bob)?;
            let fidelity = input.fidelity(&corrected_state)?;
            Ok(BranchRecord {
                j: leaf.j,
                m: leaf.m,
                probability: leaf.probability,
                bob_state: leaf.bob,
                word,
                correction,
                corrected_state,
                fidelity,
            })
        })
        .collect()
}

struct Leaf {
    j: BellOutcome,
    m: Vec<i8>,
    probability: f64,
    bob: StateVector,
}

#[allow(clippy::too_many_arguments)]
fn descend(
    cfg: &ProtocolConfig,
    order: &[usize],
    state: StateVector,
    labels: Vec<usize>,
    m: Vec<i8>,
    probability: f64,
    j: BellOutcome,
    leaves: &mut Vec<Leaf>,
) -> Result<()> {
    let Some((&label, rest)) = order.split_first() else {
        leaves.push(Leaf {
            j,
            m,
            probability,
            bob: state,
        });
        return Ok(());
    };
    let pos = labels.iter().position(|&l| l == label).expect("label still in register");
    let basis = participant_basis(cfg.kind, cfg.n, label)?;
    let mut remaining = labels;
    remaining.remove(pos);
    for outcome in measure_discard(&state, pos, basis)? {
        let p = probability * outcome.probability;
        let Some(post) = outcome.post_state else { continue };
        if p < ZERO_BRANCH {
            continue;
        }
        let mut m = m.clone();
        m[label - 2] = outcome.value;
        descend(cfg, rest, post, remaining.clone(), m, p, j, leaves)?;
    }
    Ok(())
}

/// `Σ_b p_b P_b N(ρ_b) P_b†`: Bob's post-selected output, with optional noise
/// on his qubit before the correction.
pub fn post_selected_state(
    branches: &[BranchRecord],
    noise: Option<&NoiseChannel>,
) -> Result<DensityMatrix1Q> {
    let mut acc = nalgebra::Matrix2::<C64>::zeros();
    for b in branches {
        let mut rho = DensityMatrix1Q::from_pure(&b.bob_state)?;
        if let Some(ch) = noise {
            rho = apply_channel(ch, &rho);
        }
        acc += rho.conjugate(&b.correction.unitary()).matrix() * C64::new(b.probability, 0.0);
    }
    DensityMatrix1Q::new(acc)
}

/// Measure-and-prepare strategy: measure the input in Z and prepare the
/// observed basis state.
pub fn measure_prepare_baseline(input: &StateVector) -> Result<DensityMatrix1Q> {
    if input.n_qubits() != 1 {
        return Err(Error::LengthMismatch {
            expected: 2,
            actual: input.dim(),
        });
    }
    if (input.norm() - 1.0).abs() > NORM_TOL {
        return Err(Error::NotNormalized(input.norm()));
    }
    let a = input.amplitudes();
    let (p0, p1) = (a[0].norm_sqr(), a[1].norm_sqr());
    DensityMatrix1Q::new(nalgebra::Matrix2::new(
        C64::new(p0, 0.0),
        C64::new(0.0, 0.0),
        C64::new(0.0, 0.0),
        C64::new(p1, 0.0),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::random_state;
    use crate::tomography::{process_fidelity, process_tomo_1q, ProcessMatrix, TomographyOutputs};
    use approx::assert_abs_diff_eq;

    fn cfg(kind: ClusterKind, n: usize, input: CanonicalInput) -> ProtocolConfig {
        ProtocolConfig::new(kind, n, input).unwrap()
    }

    #[test]
    fn participant_bases() {
        assert_eq!(participant_basis(ClusterKind::Box, 6, 5).unwrap(), Basis::Z);
        assert_eq!(participant_basis(ClusterKind::Box, 6, 3).unwrap(), Basis::X);
        assert_eq!(participant_basis(ClusterKind::Box, 6, 4).unwrap(), Basis::X);
        assert_eq!(participant_basis(ClusterKind::Box, 12, 11).unwrap(), Basis::Z);
        assert_eq!(participant_basis(ClusterKind::Chain, 8, 7).unwrap(), Basis::X);
        assert!(participant_basis(ClusterKind::Box, 6, 6).is_err());
        assert!(participant_basis(ClusterKind::Chain, 6, 1).is_err());
        assert!(matches!(participant_basis(ClusterKind::Box, 14, 5), Err(Error::UnsupportedN(14))));
    }

    #[test]
    fn config_validation() {
        assert!(matches!(
            ProtocolConfig::new(ClusterKind::Box, 14, CanonicalInput::Zero),
            Err(Error::UnsupportedN(14))
        ));
        assert!(ProtocolConfig::new(ClusterKind::Box, 5, CanonicalInput::Zero).is_err());
        assert!(ProtocolConfig::new(ClusterKind::Chain, 0, CanonicalInput::Zero).is_err());
        assert!(ProtocolConfig::new(ClusterKind::Chain, 14, CanonicalInput::Zero).is_ok());
        let two = InputState::Custom(StateVector::zero(2).unwrap());
        assert!(ProtocolConfig::new(ClusterKind::Chain, 2, two).is_err());
    }

    #[test]
    fn bell_measurement_on_chain_two() {
        let reg = StateVector::zero(1)
            .unwrap()
            .tensor(&prepare_cluster(&build_topology(ClusterKind::Chain, 2).unwrap()).unwrap());
        let branches = bell_measure(&reg).unwrap();
        for b in &branches {
            assert_abs_diff_eq!(b.probability, 0.25, epsilon = 1e-12);
            assert_eq!(b.post_state.as_ref().unwrap().n_qubits(), 1);
        }
    }

    #[test]
    fn bell_measurement_identifies_each_bell_state() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let phi_plus = StateVector::from_amplitudes(vec![
            C64::new(h, 0.0),
            C64::new(0.0, 0.0),
            C64::new(0.0, 0.0),
            C64::new(h, 0.0),
        ])
        .unwrap();
        for j in BellOutcome::ALL {
            let bell = apply_1q(&phi_plus, &j.unitary(), 0).unwrap();
            let branches = bell_measure(&bell).unwrap();
            for b in &branches {
                let want = if b.j == j { 1.0 } else { 0.0 };
                assert_abs_diff_eq!(b.probability, want, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn bell_measurement_needs_two_qubits() {
        assert!(bell_measure(&StateVector::zero(1).unwrap()).is_err());
    }

    #[test]
    fn box_six_with_r_input() {
        let records = run_protocol_exact(&cfg(ClusterKind::Box, 6, CanonicalInput::R)).unwrap();
        assert_eq!(records.len(), 4 * 8);
        for r in &records {
            assert_abs_diff_eq!(r.fidelity, 1.0, epsilon = 1e-10);
            assert_abs_diff_eq!(r.probability, 1.0 / 32.0, epsilon = 1e-12);
        }
        let j0 = records.iter().filter(|r| r.j == BellOutcome::ALL[0]).count();
        assert_eq!(j0, 8);
    }

    #[test]
    fn chain_six_branch_count() {
        let records = run_protocol_exact(&cfg(ClusterKind::Chain, 6, CanonicalInput::Plus)).unwrap();
        assert_eq!(records.len(), 4 * 16);
    }

    #[test]
    fn records_are_ordered_and_complete() {
        let records = run_protocol_exact(&cfg(ClusterKind::Chain, 4, CanonicalInput::One)).unwrap();
        let total: f64 = records.iter().map(|r| r.probability).sum();
        assert_abs_diff_eq!(total, 1.0, epsilon = 1e-9);
        assert_eq!(records[0].m, vec![1, 1]);
        assert_eq!(records[1].m, vec![1, -1]);
        assert_eq!(records[3].m, vec![-1, -1]);
        assert_eq!(records[4].j.to_string(), "01");
    }

    #[test]
    fn order_does_not_matter() {
        let input = InputState::Custom(random_state(1, 7));
        let c = ProtocolConfig::new(ClusterKind::Box, 8, input).unwrap();
        let forward = run_protocol_exact(&c).unwrap();
        let backward = run_protocol_exact_in_order(&c, &[7, 6, 5, 4, 3, 2]).unwrap();
        let shuffled = run_protocol_exact_in_order(&c, &[4, 2, 7, 3, 6, 5]).unwrap();
        for other in [&backward, &shuffled] {
            assert_eq!(forward.len(), other.len());
            for (a, b) in forward.iter().zip(other.iter()) {
                assert_eq!((a.j, &a.m), (b.j, &b.m));
                assert_abs_diff_eq!(a.probability, b.probability, epsilon = 1e-12);
                assert_abs_diff_eq!(a.bob_state.fidelity(&b.bob_state).unwrap(), 1.0, epsilon = 1e-10);
            }
        }
        assert!(run_protocol_exact_in_order(&c, &[2, 3]).is_err());
    }

    #[test]
    fn post_selection_returns_the_input() {
        for input in CanonicalInput::ALL {
            let records = run_protocol_exact(&cfg(ClusterKind::Box, 6, input)).unwrap();
            let rho = post_selected_state(&records, None).unwrap();
            let want = DensityMatrix1Q::from_pure(&input.state()).unwrap();
            assert!((rho.matrix() - want.matrix()).iter().all(|z| z.norm() < 1e-10));
        }
    }

    #[test]
    fn teleported_process_is_identity() {
        let outputs = TomographyOutputs::from_fn(|input| {
            let records = run_protocol_exact(&cfg(ClusterKind::Chain, 4, input))?;
            post_selected_state(&records, None)
        })
        .unwrap();
        let chi = process_tomo_1q(&outputs).unwrap();
        assert_abs_diff_eq!(
            process_fidelity(&chi, &ProcessMatrix::identity_process()),
            1.0,
            epsilon = 1e-9
        );
    }

    #[test]
    fn baseline() {
        let zero = measure_prepare_baseline(&CanonicalInput::Zero.state()).unwrap();
        assert_abs_diff_eq!(zero.expectation(crate::qsim::Pauli::Z), 1.0, epsilon = 1e-12);
        let plus = measure_prepare_baseline(&CanonicalInput::Plus.state()).unwrap();
        assert!((plus.matrix() - DensityMatrix1Q::maximally_mixed().matrix())
            .iter()
            .all(|z| z.norm() < 1e-12));
        let outputs = TomographyOutputs::from_fn(|i| measure_prepare_baseline(&i.state())).unwrap();
        let chi = process_tomo_1q(&outputs).unwrap();
        assert_abs_diff_eq!(
            process_fidelity(&chi, &ProcessMatrix::identity_process()),
            0.5,
            epsilon = 1e-12
        );
    }

    #[test]
    fn records_serialize() {
        let records = run_protocol_exact(&cfg(ClusterKind::Chain, 2, CanonicalInput::Zero)).unwrap();
        let json = serde_json::to_string(&records).unwrap();
        let back: Vec<BranchRecord> = serde_json::from_str(&json).unwrap();
        assert_eq!(back, records);
        assert!(json.contains("\"j\":\"00\""));
    }
}
