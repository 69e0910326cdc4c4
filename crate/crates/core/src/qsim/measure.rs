use serde::{Deserialize, Serialize};

use crate::{Result, C64};

use super::{StateVector, NORM_TOL};

/// Branches with probability below this are treated as impossible.
const ZERO_PROB: f64 = 1e-14;

/// Local measurement basis used by the protocols.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Basis {
    Z,
    X,
}

/// One branch of a projective measurement.
#[derive(Clone, Debug)]
pub struct MeasurementOutcome {
    pub basis: Basis,
    /// Eigenvalue, `+1` or `-1`.
    pub value: i8,
    pub probability: f64,
    /// Renormalized post-measurement state; `None` for impossible outcomes.
    pub post_state: Option<StateVector>,
}

/// Like [`MeasurementOutcome`], but the measured qubit has been removed from the
/// post-measurement register.
#[derive(Clone, Debug)]
pub struct ReducedOutcome {
    pub value: i8,
    pub probability: f64,
    pub post_state: Option<StateVector>,
}

/// Amplitudes of `<v|_q psi>` for each eigenvector `v` of the basis: the state of
/// the remaining qubits, unnormalized.
fn project_out(state: &StateVector, q: usize, basis: Basis) -> [Vec<C64>; 2] {
    let mask = state.mask(q);
    let low = mask - 1;
    let half = state.dim() / 2;
    let amps = state.amplitudes();
    let mut plus = Vec::with_capacity(half);
    let mut minus = Vec::with_capacity(half);
    for k in 0..half {
        // reinsert a zero bit at the position of q
        let i0 = ((k & !low) << 1) | (k & low);
        let (a0, a1) = (amps[i0], amps[i0 | mask]);
        match basis {
            Basis::Z => {
                plus.push(a0);
                minus.push(a1);
            }
            Basis::X => {
                let h = std::f64::consts::FRAC_1_SQRT_2;
                plus.push((a0 + a1) * h);
                minus.push((a0 - a1) * h);
            }
        }
    }
    [plus, minus]
}

fn renormalize(n_qubits: usize, mut amps: Vec<C64>) -> (f64, Option<StateVector>) {
    let p: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
    if p < ZERO_PROB {
        return (p.max(0.0), None);
    }
    let s = p.sqrt();
    amps.iter_mut().for_each(|a| *a /= s);
    (p, Some(StateVector::from_raw(n_qubits, amps)))
}

/// Measures qubit `q` in `basis`, returning the `+1` branch followed by the `-1`
/// branch. Post-states keep all qubits; the measured one is left in the
/// corresponding eigenstate.
pub fn measure(state: &StateVector, q: usize, basis: Basis) -> Result<[MeasurementOutcome; 2]> {
    state.check_qubit(q)?;
    let mask = state.mask(q);
    let amps = state.amplitudes();
    let branch = |value: i8| {
        let projected: Vec<C64> = match basis {
            Basis::Z => amps
                .iter()
                .enumerate()
                .map(|(i, &a)| {
                    let bit_one = i & mask != 0;
                    if bit_one == (value < 0) {
                        a
                    } else {
                        C64::new(0.0, 0.0)
                    }
                })
                .collect(),
            // (I ± X_q)/2
            Basis::X => amps
                .iter()
                .enumerate()
                .map(|(i, &a)| (a + amps[i ^ mask] * f64::from(value)) * 0.5)
                .collect(),
        };
        let (probability, post_state) = renormalize(state.n_qubits(), projected);
        MeasurementOutcome {
            basis,
            value,
            probability,
            post_state,
        }
    };
    let out = [branch(1), branch(-1)];
    debug_assert!((out[0].probability + out[1].probability - 1.0).abs() < 1e-9);
    Ok(out)
}

/// Measures qubit `q` and traces it out. Post-states live on the remaining
/// `n - 1` qubits (in their original relative order); measuring the last qubit
/// of a register yields probabilities with no post-state.
pub fn measure_discard(state: &StateVector, q: usize, basis: Basis) -> Result<[ReducedOutcome; 2]> {
    state.check_qubit(q)?;
    let [plus, minus] = project_out(state, q, basis);
    let n = state.n_qubits() - 1;
    let make = |value: i8, amps: Vec<C64>| {
        if n == 0 {
            return ReducedOutcome {
                value,
                probability: amps[0].norm_sqr(),
                post_state: None,
            };
        }
        let (probability, post_state) = renormalize(n, amps);
        ReducedOutcome {
            value,
            probability,
            post_state,
        }
    };
    let out = [make(1, plus), make(-1, minus)];
    debug_assert!((out[0].probability + out[1].probability - 1.0).abs() < NORM_TOL * 100.0);
    Ok(out)
}
