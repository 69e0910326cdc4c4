//! Bob's correction operator.
//!
//! A correction is first assembled as a word of letters `I, X, Z, H`, written as a
//! matrix product: the rightmost letter acts first. The word is then reduced to
//! one of eight canonical operators `{I, Z, X, ZX} × {·, ·H}` with the rewrite
//! rules
//!
//! - (i) drop identities: `IX = XI = X`, `IZ = ZI = Z`;
//! - (ii) `XZX -> Z`, `ZXZ -> X`;
//! - (iii) `XX -> I`, `ZZ -> I`;
//! - (iv) a final `XZ` is written `ZX`.
//!
//! Rules (ii) and (iv) drop a sign, so the reduced operator equals the word only
//! up to a global phase.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::qsim::{apply_1q, Pauli, StateVector, Unitary1Q};
use crate::{Error, Result, C64};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Letter {
    I,
    X,
    Z,
    H,
}

impl Letter {
    fn as_char(self) -> char {
        match self {
            Letter::I => 'I',
            Letter::X => 'X',
            Letter::Z => 'Z',
            Letter::H => 'H',
        }
    }

    pub fn unitary(self) -> Unitary1Q {
        match self {
            Letter::I => Unitary1Q::identity(),
            Letter::X => Unitary1Q::x(),
            Letter::Z => Unitary1Q::z(),
            Letter::H => Unitary1Q::h(),
        }
    }
}

/// Measurement result of Alice's Bell measurement. The first bit is the
/// Z-outcome of the input qubit, the second that of Alice's cluster qubit
/// (`0` for eigenvalue +1).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct BellOutcome(u8);

impl BellOutcome {
    pub const ALL: [BellOutcome; 4] = [BellOutcome(0), BellOutcome(1), BellOutcome(2), BellOutcome(3)];

    pub fn from_bits(first: bool, second: bool) -> Self {
        Self((u8::from(first) << 1) | u8::from(second))
    }

    pub fn bits(self) -> (bool, bool) {
        (self.0 & 2 != 0, self.0 & 1 != 0)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    /// `U_00 = I, U_01 = X, U_10 = Z, U_11 = ZX`, as letters.
    pub fn letters(self) -> &'static [Letter] {
        match self.0 {
            0 => &[Letter::I],
            1 => &[Letter::X],
            2 => &[Letter::Z],
            _ => &[Letter::Z, Letter::X],
        }
    }

    /// `U_j` as a matrix.
    pub fn unitary(self) -> Unitary1Q {
        self.letters()
            .iter()
            .fold(Unitary1Q::identity(), |acc, l| acc * l.unitary())
    }
}

impl fmt::Display for BellOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:02b}", self.0)
    }
}

impl FromStr for BellOutcome {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "00" => Ok(BellOutcome(0)),
            "01" => Ok(BellOutcome(1)),
            "10" => Ok(BellOutcome(2)),
            "11" => Ok(BellOutcome(3)),
            _ => Err(Error::Parse(s.to_string())),
        }
    }
}

impl TryFrom<String> for BellOutcome {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<BellOutcome> for String {
    fn from(j: BellOutcome) -> String {
        j.to_string()
    }
}

/// Correction as an ordered letter word; at most one `H`, and only in the
/// rightmost position.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct CorrectionWord(Vec<Letter>);

impl CorrectionWord {
    pub fn new(letters: Vec<Letter>) -> Result<Self> {
        let word = Self(letters);
        if word.0.is_empty() {
            return Err(Error::MalformedWord {
                word: String::new(),
                reason: "empty word",
            });
        }
        let h_count = word.0.iter().filter(|&&l| l == Letter::H).count();
        if h_count > 1 || (h_count == 1 && word.0.last() != Some(&Letter::H)) {
            return Err(Error::MalformedWord {
                word: word.to_string(),
                reason: "H may only appear once, in the rightmost position",
            });
        }
        Ok(word)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn has_hadamard(&self) -> bool {
        self.0.last() == Some(&Letter::H)
    }

    /// Product of the letter matrices, left to right.
    pub fn matrix(&self) -> Unitary1Q {
        self.0
            .iter()
            .fold(Unitary1Q::identity(), |acc, l| acc * l.unitary())
    }
}

impl fmt::Display for CorrectionWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "{}", l.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for CorrectionWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let letters = s
            .chars()
            .map(|c| match c {
                'I' => Ok(Letter::I),
                'X' => Ok(Letter::X),
                'Z' => Ok(Letter::Z),
                'H' => Ok(Letter::H),
                _ => Err(Error::MalformedWord {
                    word: s.to_string(),
                    reason: "letters must be I, X, Z or H",
                }),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(letters)
    }
}

impl TryFrom<String> for CorrectionWord {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<CorrectionWord> for String {
    fn from(w: CorrectionWord) -> String {
        w.to_string()
    }
}

/// Pauli part of a canonical correction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PauliCorrection {
    I,
    X,
    Z,
    ZX,
}

impl PauliCorrection {
    fn letters(self) -> &'static str {
        match self {
            PauliCorrection::I => "I",
            PauliCorrection::X => "X",
            PauliCorrection::Z => "Z",
            PauliCorrection::ZX => "ZX",
        }
    }

    pub fn unitary(self) -> Unitary1Q {
        match self {
            PauliCorrection::I => Unitary1Q::identity(),
            PauliCorrection::X => Unitary1Q::x(),
            PauliCorrection::Z => Unitary1Q::z(),
            PauliCorrection::ZX => Unitary1Q::z() * Unitary1Q::x(),
        }
    }
}

/// Canonical correction: `pauli`, preceded by `H` when `pre_hadamard` is set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct CorrectionOp {
    pub pauli: PauliCorrection,
    pub pre_hadamard: bool,
}

impl CorrectionOp {
    pub const ALL: [CorrectionOp; 8] = {
        use PauliCorrection::*;
        [
            CorrectionOp { pauli: I, pre_hadamard: false },
            CorrectionOp { pauli: Z, pre_hadamard: false },
            CorrectionOp { pauli: X, pre_hadamard: false },
            CorrectionOp { pauli: ZX, pre_hadamard: false },
            CorrectionOp { pauli: I, pre_hadamard: true },
            CorrectionOp { pauli: Z, pre_hadamard: true },
            CorrectionOp { pauli: X, pre_hadamard: true },
            CorrectionOp { pauli: ZX, pre_hadamard: true },
        ]
    };

    pub fn unitary(&self) -> Unitary1Q {
        if self.pre_hadamard {
            self.pauli.unitary() * Unitary1Q::h()
        } else {
            self.pauli.unitary()
        }
    }

    /// Applies the correction to Bob's single-qubit state.
    pub fn apply(&self, bob: &StateVector) -> Result<StateVector> {
        let mut s = bob.clone();
        if self.pre_hadamard {
            s = apply_1q(&s, &Unitary1Q::h(), 0)?;
        }
        apply_1q(&s, &self.pauli.unitary(), 0)
    }

    /// `P† σ P = sign · σ'`: which Pauli `σ'` must be measured before the
    /// correction to learn `<σ>` after it.
    pub fn pull_back(&self, sigma: Pauli) -> (f64, Pauli) {
        let p = self.unitary();
        let m = p.matrix().adjoint() * sigma.unitary().matrix() * p.matrix();
        for candidate in [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z] {
            let c = candidate.unitary();
            for sign in [1.0, -1.0] {
                let d = m - c.matrix() * C64::new(sign, 0.0);
                if d.iter().all(|z| z.norm() < 1e-12) {
                    return (sign, candidate);
                }
            }
        }
        unreachable!("Clifford conjugation maps Paulis to signed Paulis")
    }
}

impl fmt::Display for CorrectionOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.pauli, self.pre_hadamard) {
            (PauliCorrection::I, true) => write!(f, "H"),
            (p, true) => write!(f, "{}H", p.letters()),
            (p, false) => write!(f, "{}", p.letters()),
        }
    }
}

impl FromStr for CorrectionOp {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CorrectionOp::ALL
            .into_iter()
            .find(|op| op.to_string() == s)
            .ok_or_else(|| Error::Parse(s.to_string()))
    }
}

impl TryFrom<String> for CorrectionOp {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<CorrectionOp> for String {
    fn from(op: CorrectionOp) -> String {
        op.to_string()
    }
}

/// `O_{i,-1}` for the box protocol, `i = 2..=11`.
pub fn box_flip_letter(i: usize) -> Result<Letter> {
    Ok(match i {
        2 | 5 => Letter::I,
        3 | 6 | 9 | 10 => Letter::X,
        4 | 7 | 8 | 11 => Letter::Z,
        _ => return Err(Error::ParticipantOutOfRange { index: i, max: 11 }),
    })
}

/// `O_{i,-1}` for the chain protocol: `X` for even `i`, `Z` for odd `i`.
pub fn chain_flip_letter(i: usize) -> Letter {
    if i.is_multiple_of(2) {
        Letter::X
    } else {
        Letter::Z
    }
}

fn check_outcomes(m: &[i8]) -> Result<()> {
    match m.iter().find(|&&v| v != 1 && v != -1) {
        Some(&v) => Err(Error::InvalidOutcome(v)),
        None => Ok(()),
    }
}

/// Box protocol: `P = O_{2,m2} ⋯ O_{N-1,m_{N-1}} · U_j · H^(N)` with
/// `H^(N) = I` when `4 | N`.
pub fn correction_box(j: BellOutcome, m: &[i8], n: usize) -> Result<CorrectionWord> {
    if !n.is_multiple_of(2) || !(4..=12).contains(&n) {
        return Err(Error::UnsupportedN(n));
    }
    if m.len() != n - 2 {
        return Err(Error::LengthMismatch {
            expected: n - 2,
            actual: m.len(),
        });
    }
    check_outcomes(m)?;
    let mut letters = Vec::with_capacity(n + 1);
    for (k, &mi) in m.iter().enumerate() {
        let i = k + 2;
        letters.push(if mi == 1 { Letter::I } else { box_flip_letter(i)? });
    }
    letters.extend_from_slice(j.letters());
    if !n.is_multiple_of(4) {
        letters.push(Letter::H);
    }
    CorrectionWord::new(letters)
}

/// Chain protocol: `P = O_{2,m2} ⋯ O_{N-1,m_{N-1}} · U_j · H`; `N = m.len() + 2`.
pub fn correction_chain(j: BellOutcome, m: &[i8]) -> Result<CorrectionWord> {
    check_outcomes(m)?;
    let mut letters: Vec<Letter> = m
        .iter()
        .enumerate()
        .map(|(k, &mi)| if mi == 1 { Letter::I } else { chain_flip_letter(k + 2) })
        .collect();
    letters.extend_from_slice(j.letters());
    letters.push(Letter::H);
    CorrectionWord::new(letters)
}

/// Which reduction rule produced a step.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Rule {
    DropIdentity,
    Alternation,
    Cancellation,
    Reorder,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rule::DropIdentity => "(i)",
            Rule::Alternation => "(ii)",
            Rule::Cancellation => "(iii)",
            Rule::Reorder => "(iv)",
        })
    }
}

/// One rewrite step: the rule applied and the word it produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteStep {
    pub rule: Rule,
    pub word: String,
}

fn find(hay: &[Letter], pats: &[&[Letter]]) -> Option<(usize, usize)> {
    (0..hay.len()).find_map(|pos| {
        pats.iter()
            .position(|p| hay[pos..].starts_with(p))
            .map(|which| (pos, which))
    })
}

fn render(paulis: &[Letter], h: bool) -> String {
    let mut s: String = paulis.iter().map(|l| l.as_char()).collect();
    if h {
        s.push('H');
    }
    s
}

/// Reduces a word to canonical form, recording every rewrite.
pub fn simplify_with_trace(word: &CorrectionWord) -> (CorrectionOp, Vec<RewriteStep>) {
    use Letter::{I, X, Z};
    let h = word.has_hadamard();
    let mut w: Vec<Letter> = word.letters().iter().copied().filter(|&l| l != Letter::H).collect();
    if w.is_empty() {
        w.push(I);
    }
    let mut steps = Vec::new();
    loop {
        let rule = if w.len() > 1 && w.contains(&I) {
            w.retain(|&l| l != I);
            if w.is_empty() {
                w.push(I);
            }
            Rule::DropIdentity
        } else if let Some((pos, which)) = find(&w, &[&[X, Z, X], &[Z, X, Z], &[X, X], &[Z, Z]]) {
            // leftmost match wins; a position never starts two of these patterns
            if which < 2 {
                let replacement = if which == 0 { Z } else { X };
                w.splice(pos..pos + 3, [replacement]);
                Rule::Alternation
            } else {
                w.splice(pos..pos + 2, [I]);
                Rule::Cancellation
            }
        } else {
            break;
        };
        steps.push(RewriteStep {
            rule,
            word: render(&w, h),
        });
    }
    if w == [X, Z] {
        w = vec![Z, X];
        steps.push(RewriteStep {
            rule: Rule::Reorder,
            word: render(&w, h),
        });
    }
    let pauli = match w.as_slice() {
        [I] => PauliCorrection::I,
        [X] => PauliCorrection::X,
        [Z] => PauliCorrection::Z,
        [Z, X] => PauliCorrection::ZX,
        other => unreachable!("irreducible word {}", render(other, false)),
    };
    (
        CorrectionOp {
            pauli,
            pre_hadamard: h,
        },
        steps,
    )
}

/// Canonical form of a correction word.
pub fn simplify(word: &CorrectionWord) -> CorrectionOp {
    simplify_with_trace(word).0
}
