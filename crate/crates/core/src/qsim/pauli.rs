use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::{Error, Result, C64};

use super::{StateVector, Unitary1Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub fn unitary(self) -> Unitary1Q {
        match self {
            Pauli::I => Unitary1Q::identity(),
            Pauli::X => Unitary1Q::x(),
            Pauli::Y => Unitary1Q::y(),
            Pauli::Z => Unitary1Q::z(),
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    pub fn from_char(c: char) -> Result<Self> {
        match c {
            'I' => Ok(Pauli::I),
            'X' => Ok(Pauli::X),
            'Y' => Ok(Pauli::Y),
            'Z' => Ok(Pauli::Z),
            other => Err(Error::Parse(other.to_string())),
        }
    }

    fn flips(self) -> bool {
        matches!(self, Pauli::X | Pauli::Y)
    }

    /// Two single-qubit Paulis anticommute iff both are non-identity and differ.
    pub fn anticommutes_with(self, other: Pauli) -> bool {
        self != Pauli::I && other != Pauli::I && self != other
    }
}

impl fmt::Display for Pauli {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// Tensor product of single-qubit Paulis, one label per qubit (qubit 0 first).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct PauliString(Vec<Pauli>);

impl PauliString {
    pub fn new(labels: Vec<Pauli>) -> Self {
        Self(labels)
    }

    pub fn identity(n: usize) -> Self {
        Self(vec![Pauli::I; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn labels(&self) -> &[Pauli] {
        &self.0
    }

    pub fn get(&self, q: usize) -> Pauli {
        self.0[q]
    }

    pub fn set(&mut self, q: usize, p: Pauli) {
        self.0[q] = p;
    }

    /// Qubits carrying a non-identity label.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, p)| **p != Pauli::I)
            .map(|(q, _)| q)
    }

    pub fn commutes_with(&self, other: &PauliString) -> bool {
        self.0
            .iter()
            .zip(&other.0)
            .filter(|(a, b)| a.anticommutes_with(**b))
            .count()
            % 2
            == 0
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.0 {
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl FromStr for PauliString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.is_empty() {
            return Err(Error::Parse(s.to_string()));
        }
        s.chars()
            .map(Pauli::from_char)
            .collect::<Result<Vec<_>>>()
            .map(Self)
            .map_err(|_| Error::Parse(s.to_string()))
    }
}

impl TryFrom<String> for PauliString {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<PauliString> for String {
    fn from(p: PauliString) -> String {
        p.to_string()
    }
}

/// `<state|P|state>`.
///
/// Each basis state `|i>` is mapped by `P` to `phase(i) |i ^ flip_mask>`, so the
/// expectation is a single pass over the amplitudes.
pub fn expectation(state: &StateVector, p: &PauliString) -> Result<f64> {
    let n = state.n_qubits();
    if p.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            actual: p.len(),
        });
    }
    let mut flip = 0usize;
    let mut zmask = 0usize;
    let mut n_y = 0u32;
    for (q, &label) in p.labels().iter().enumerate() {
        let m = state.mask(q);
        if label.flips() {
            flip |= m;
        }
        if matches!(label, Pauli::Z | Pauli::Y) {
            zmask |= m;
        }
        if label == Pauli::Y {
            n_y += 1;
        }
    }
    // Y|b> = i (-1)^b |b^1>, so every Y contributes a factor i on top of the Z sign.
    let y_phase = C64::i().powu(n_y);
    let amps = state.amplitudes();
    let total: C64 = amps
        .iter()
        .enumerate()
        .map(|(i, &a)| {
            let sign = if (i & zmask).count_ones().is_multiple_of(2) { 1.0 } else { -1.0 };
            amps[i ^ flip].conj() * a * sign
        })
        .sum();
    Ok((total * y_phase).re)
}
