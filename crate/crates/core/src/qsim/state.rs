use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{Error, Result, C64};

use super::NORM_TOL;

/// Unit-norm amplitude vector over `n_qubits` qubits.
///
/// Basis index bit `n_qubits - 1 - q` holds qubit `q`, i.e. qubit 0 is the most
/// significant bit.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "StateRepr", into = "StateRepr")]
pub struct StateVector {
    n_qubits: usize,
    amps: Vec<C64>,
}

impl StateVector {
    /// `|0...0>` on `n_qubits` qubits.
    pub fn zero(n_qubits: usize) -> Result<Self> {
        Self::basis(n_qubits, 0)
    }

    /// Computational basis state `|index>`.
    pub fn basis(n_qubits: usize, index: usize) -> Result<Self> {
        if n_qubits == 0 {
            return Err(Error::LengthMismatch {
                expected: 2,
                actual: 1,
            });
        }
        let dim = 1usize << n_qubits;
        if index >= dim {
            return Err(Error::LengthMismatch {
                expected: dim,
                actual: index,
            });
        }
        let mut amps = vec![C64::new(0.0, 0.0); dim];
        amps[index] = C64::new(1.0, 0.0);
        Ok(Self { n_qubits, amps })
    }

    /// Builds a state from explicit amplitudes. The length must be a power of two
    /// (at least 2) and the vector must already be normalized.
    pub fn from_amplitudes(amps: Vec<C64>) -> Result<Self> {
        let len = amps.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::LengthMismatch {
                expected: len.next_power_of_two().max(2),
                actual: len,
            });
        }
        let state = Self {
            n_qubits: len.trailing_zeros() as usize,
            amps,
        };
        let norm = state.norm();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized(norm));
        }
        Ok(state)
    }

    /// Like [`StateVector::from_amplitudes`] but rescales to unit norm first.
    pub fn normalized(mut amps: Vec<C64>) -> Result<Self> {
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::NotNormalized(norm));
        }
        amps.iter_mut().for_each(|a| *a /= norm);
        Self::from_amplitudes(amps)
    }

    pub(crate) fn from_raw(n_qubits: usize, amps: Vec<C64>) -> Self {
        debug_assert_eq!(amps.len(), 1 << n_qubits);
        Self { n_qubits, amps }
    }

    /// Single-qubit `a|0> + b|1>`, normalized.
    pub fn qubit(a: C64, b: C64) -> Result<Self> {
        Self::normalized(vec![a, b])
    }

    pub fn plus() -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        Self::from_raw(1, vec![C64::new(h, 0.0), C64::new(h, 0.0)])
    }

    pub fn minus() -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        Self::from_raw(1, vec![C64::new(h, 0.0), C64::new(-h, 0.0)])
    }

    /// `|R> = (|0> + i|1>)/sqrt(2)`, the +1 eigenstate of Y.
    pub fn right() -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        Self::from_raw(1, vec![C64::new(h, 0.0), C64::new(0.0, h)])
    }

    /// `|L> = (|0> - i|1>)/sqrt(2)`.
    pub fn left() -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        Self::from_raw(1, vec![C64::new(h, 0.0), C64::new(0.0, -h)])
    }

    /// `|+>^{⊗n}`.
    pub fn plus_n(n_qubits: usize) -> Result<Self> {
        if n_qubits == 0 {
            return Err(Error::LengthMismatch {
                expected: 2,
                actual: 1,
            });
        }
        let dim = 1usize << n_qubits;
        let a = C64::new((dim as f64).sqrt().recip(), 0.0);
        Ok(Self::from_raw(n_qubits, vec![a; dim]))
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    pub fn amplitude(&self, index: usize) -> C64 {
        self.amps[index]
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Bit mask of qubit `q` in the basis index.
    pub fn mask(&self, q: usize) -> usize {
        1 << (self.n_qubits - 1 - q)
    }

    pub(crate) fn check_qubit(&self, q: usize) -> Result<()> {
        if q >= self.n_qubits {
            return Err(Error::QubitOutOfRange {
                index: q,
                n_qubits: self.n_qubits,
            });
        }
        Ok(())
    }

    /// `self ⊗ other`; the qubits of `self` come first.
    pub fn tensor(&self, other: &StateVector) -> StateVector {
        let mut amps = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.amps {
            for b in &other.amps {
                amps.push(a * b);
            }
        }
        Self::from_raw(self.n_qubits + other.n_qubits, amps)
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &StateVector) -> Result<C64> {
        if self.dim() != other.dim() {
            return Err(Error::LengthMismatch {
                expected: self.dim(),
                actual: other.dim(),
            });
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Squared overlap `|<self|other>|^2`, insensitive to global phase.
    pub fn fidelity(&self, other: &StateVector) -> Result<f64> {
        Ok(self.inner(other)?.norm_sqr())
    }
}

impl fmt::Debug for StateVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "StateVector[{}](", self.n_qubits)?;
        for (i, a) in self.amps.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{:.6}{:+.6}i", a.re, a.im)?;
        }
        write!(f, ")")
    }
}

#[derive(Serialize, Deserialize)]
struct StateRepr {
    n_qubits: usize,
    amplitudes: Vec<[f64; 2]>,
}

impl From<StateVector> for StateRepr {
    fn from(s: StateVector) -> Self {
        Self {
            n_qubits: s.n_qubits,
            amplitudes: s.amps.iter().map(|a| [a.re, a.im]).collect(),
        }
    }
}

impl TryFrom<StateRepr> for StateVector {
    type Error = Error;

    fn try_from(r: StateRepr) -> Result<Self> {
        let s = StateVector::from_amplitudes(
            r.amplitudes
                .into_iter()
                .map(|[re, im]| C64::new(re, im))
                .collect(),
        )?;
        if s.n_qubits != r.n_qubits {
            return Err(Error::LengthMismatch {
                expected: 1 << r.n_qubits,
                actual: s.dim(),
            });
        }
        Ok(s)
    }
}
