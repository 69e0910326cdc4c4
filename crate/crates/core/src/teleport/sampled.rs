//! Shot-sampled runs. Bob's uncorrected qubit is measured in each tomography
//! setting for every branch; the correction is applied afterwards as a
//! post-selection on the recorded outcomes.

use serde::{Deserialize, Serialize};

use crate::noise::{apply_channel, NoiseChannel};
use crate::qsim::{sample_counts_with, stream_rng, Pauli};
use crate::tomography::{state_tomo_1q, DensityMatrix1Q};
use crate::{Error, Result};

use super::{run_protocol_exact, BellOutcome, CorrectionOp, ProtocolConfig};

/// Tomography settings on Bob's qubit, in the order their random streams are
/// numbered.
pub const TOMOGRAPHY_SETTINGS: [Pauli; 3] = [Pauli::X, Pauli::Y, Pauli::Z];

/// Counts of one branch in one setting; `counts[0]` is the `+1` outcome.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchTally {
    pub j: BellOutcome,
    pub m: Vec<i8>,
    pub correction: CorrectionOp,
    pub counts: [u64; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SettingTally {
    pub setting: Pauli,
    /// `shots × reps`.
    pub total: u64,
    pub branches: Vec<BranchTally>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampledRun {
    pub shots: u64,
    pub reps: u32,
    pub seed: u64,
    pub settings: Vec<SettingTally>,
}

/// Pauli expectation values of the corrected output with one standard error each.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorrectedEstimate {
    /// `(<X>, <Y>, <Z>)`.
    pub bloch: [f64; 3],
    pub sigma: [f64; 3],
}

impl CorrectedEstimate {
    pub fn density(&self) -> Result<DensityMatrix1Q> {
        let [x, y, z] = self.bloch;
        state_tomo_1q(x, y, z)
    }
}

impl SampledRun {
    pub fn setting(&self, p: Pauli) -> Option<&SettingTally> {
        self.settings.iter().find(|s| s.setting == p)
    }

    /// Outcome counts of `sigma` measured after the correction. Each branch
    /// contributes its counts from the setting `σ'` with `P† σ P = ±σ'`, swapped
    /// when the sign is negative.
    pub fn post_selected_counts(&self, sigma: Pauli) -> Result<[u64; 2]> {
        let mut out = [0u64; 2];
        let reference = self
            .settings
            .first()
            .ok_or_else(|| Error::Invariant("sampled run without settings".into()))?;
        for (b, branch) in reference.branches.iter().enumerate() {
            let (sign, pulled) = branch.correction.pull_back(sigma);
            let tally = self
                .setting(pulled)
                .ok_or_else(|| Error::Invariant(format!("missing setting {}", pulled.as_char())))?;
            let c = tally.branches[b].counts;
            if sign > 0.0 {
                out[0] += c[0];
                out[1] += c[1];
            } else {
                out[0] += c[1];
                out[1] += c[0];
            }
        }
        Ok(out)
    }

    /// Post-selected Bloch vector. Each component is `(n+ - n-)/n` with the
    /// Poissonian counting error `sqrt(n+ + n-)/n = 1/sqrt(n)`.
    pub fn corrected_estimate(&self) -> Result<CorrectedEstimate> {
        let mut bloch = [0.0; 3];
        let mut sigma = [1.0; 3];
        for (k, p) in TOMOGRAPHY_SETTINGS.into_iter().enumerate() {
            let [plus, minus] = self.post_selected_counts(p)?;
            let n = (plus + minus) as f64;
            if n > 0.0 {
                let e = (plus as f64 - minus as f64) / n;
                bloch[k] = e;
                sigma[k] = n.sqrt() / n;
            }
        }
        Ok(CorrectedEstimate { bloch, sigma })
    }
}

/// Samples `reps` batches of `shots` for each tomography setting. Setting `k` of
/// [`TOMOGRAPHY_SETTINGS`] draws from stream `k` of `seed`, and `noise` acts on
/// Bob's qubit before his measurement.
pub fn run_protocol_sampled(
    cfg: &ProtocolConfig,
    shots: u64,
    reps: u32,
    seed: u64,
    noise: Option<&NoiseChannel>,
) -> Result<SampledRun> {
    if shots == 0 || reps == 0 {
        return Err(Error::Config("shots and reps must be at least 1".into()));
    }
    let records = run_protocol_exact(cfg)?;
    let states = records
        .iter()
        .map(|r| {
            let rho = DensityMatrix1Q::from_pure(&r.bob_state)?;
            Ok(match noise {
                Some(ch) => apply_channel(ch, &rho),
                None => rho,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let mut settings = Vec::with_capacity(3);
    for (k, setting) in TOMOGRAPHY_SETTINGS.into_iter().enumerate() {
        let joint: Vec<f64> = records
            .iter()
            .zip(&states)
            .flat_map(|(r, rho)| rho.outcome_probabilities(setting).map(|q| r.probability * q))
            .collect();
        let mut rng = stream_rng(seed, k as u64);
        let mut counts = vec![0u64; joint.len()];
        for _ in 0..reps {
            for (acc, c) in counts.iter_mut().zip(sample_counts_with(&joint, shots, &mut rng)?) {
                *acc += c;
            }
        }
        let branches = records
            .iter()
            .zip(counts.chunks_exact(2))
            .map(|(r, c)| BranchTally {
                j: r.j,
                m: r.m.clone(),
                correction: r.correction,
                counts: [c[0], c[1]],
            })
            .collect();
        settings.push(SettingTally {
            setting,
            total: shots * u64::from(reps),
            branches,
        });
    }
    Ok(SampledRun {
        shots,
        reps,
        seed,
        settings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cluster::ClusterKind;
    use crate::noise::NoiseKind;
    use crate::tomography::CanonicalInput;

    fn cfg(kind: ClusterKind, n: usize, input: CanonicalInput) -> ProtocolConfig {
        ProtocolConfig::new(kind, n, input).unwrap()
    }

    #[test]
    fn ideal_zero_input_post_selects_to_zero() {
        let run = run_protocol_sampled(&cfg(ClusterKind::Box, 4, CanonicalInput::Zero), 1000, 3, 11, None).unwrap();
        assert_eq!(run.post_selected_counts(Pauli::Z).unwrap()[1], 0);
        let est = run.corrected_estimate().unwrap();
        assert_eq!(est.bloch[2], 1.0);
        assert!((est.sigma[2] - 1.0 / 3000f64.sqrt()).abs() < 1e-3);
    }

    #[test]
    fn totals_are_conserved() {
        let run = run_protocol_sampled(&cfg(ClusterKind::Chain, 4, CanonicalInput::Plus), 512, 4, 3, None).unwrap();
        for s in &run.settings {
            let sum: u64 = s.branches.iter().map(|b| b.counts[0] + b.counts[1]).sum();
            assert_eq!(sum, 512 * 4);
            assert_eq!(s.total, 512 * 4);
        }
    }

    #[test]
    fn deterministic_per_seed() {
        let c = cfg(ClusterKind::Box, 6, CanonicalInput::R);
        let a = run_protocol_sampled(&c, 256, 2, 99, None).unwrap();
        let b = run_protocol_sampled(&c, 256, 2, 99, None).unwrap();
        let other = run_protocol_sampled(&c, 256, 2, 100, None).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, other);
    }

    #[test]
    fn full_depolarizing_noise_is_balanced() {
        let ch = NoiseChannel::default_for(NoiseKind::Depolarizing);
        let (shots, reps) = (8192, 10);
        let run = run_protocol_sampled(&cfg(ClusterKind::Box, 4, CanonicalInput::Zero), shots, reps, 5, Some(&ch)).unwrap();
        let [plus, minus] = run.post_selected_counts(Pauli::Z).unwrap();
        let n = (plus + minus) as f64;
        let sd = (n * 0.25).sqrt();
        assert!(((plus as f64) - n / 2.0).abs() < 5.0 * sd, "{plus} vs {minus}");
    }

    #[test]
    fn estimates_converge() {
        let run = run_protocol_sampled(&cfg(ClusterKind::Chain, 4, CanonicalInput::R), 100_000, 1, 8, None).unwrap();
        let est = run.corrected_estimate().unwrap();
        assert!(est.bloch[0].abs() < 0.02);
        assert!((est.bloch[1] - 1.0).abs() < 1e-12);
        assert!(est.bloch[2].abs() < 0.02);
    }

    #[test]
    fn rejects_zero_shots() {
        let c = cfg(ClusterKind::Chain, 2, CanonicalInput::Zero);
        assert!(run_protocol_sampled(&c, 0, 1, 0, None).is_err());
        assert!(run_protocol_sampled(&c, 1, 0, 0, None).is_err());
    }
}
