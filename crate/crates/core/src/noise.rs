//! Depolarizing, phase-damping and amplitude-damping channels.
//!
//! Default strengths are the extreme settings used for the hardware comparison:
//!
//! ```text
//! depolarizing       (1 - 3/4) ρ + 1/4 (XρX + YρY + ZρZ)            p = 3/4
//! phase damping      (1 - 1/2) ρ + 1/2 ZρZ                          p = 1/2
//! amplitude damping  K0 = (I+Z)/2, K1 = (X+iY)/2                     γ = 1
//! ```

use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, Matrix2};
use serde::{Deserialize, Serialize};

use crate::linalg::{hermitian_eigen, sqrt_psd, trace};
use crate::qsim::Pauli;
use crate::tomography::{DensityMatrix1Q, ProcessMatrix, MATRIX_TOL};
use crate::{Error, Result, C64};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NoiseKind {
    Depolarizing,
    PhaseDamping,
    AmplitudeDamping,
}

impl NoiseKind {
    pub const ALL: [NoiseKind; 3] = [
        NoiseKind::Depolarizing,
        NoiseKind::PhaseDamping,
        NoiseKind::AmplitudeDamping,
    ];

    pub fn default_strength(self) -> f64 {
        match self {
            NoiseKind::Depolarizing => 0.75,
            NoiseKind::PhaseDamping => 0.5,
            NoiseKind::AmplitudeDamping => 1.0,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            NoiseKind::Depolarizing => "depolarizing",
            NoiseKind::PhaseDamping => "phase-damping",
            NoiseKind::AmplitudeDamping => "amplitude-damping",
        }
    }
}

impl fmt::Display for NoiseKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for NoiseKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "depolarizing" => Ok(NoiseKind::Depolarizing),
            "phase-damping" => Ok(NoiseKind::PhaseDamping),
            "amplitude-damping" => Ok(NoiseKind::AmplitudeDamping),
            other => Err(Error::InvalidNoise(format!("unknown channel `{other}`"))),
        }
    }
}

/// A single-qubit noise channel with its Kraus operators.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "NoiseSpec", into = "NoiseSpec")]
pub struct NoiseChannel {
    kind: NoiseKind,
    strength: f64,
    kraus: Vec<Matrix2<C64>>,
}

/// Wire form of a channel: `{kind, strength}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NoiseSpec {
    pub kind: NoiseKind,
    #[serde(default)]
    pub strength: Option<f64>,
}

impl TryFrom<NoiseSpec> for NoiseChannel {
    type Error = Error;

    fn try_from(s: NoiseSpec) -> Result<Self> {
        NoiseChannel::new(s.kind, s.strength.unwrap_or(s.kind.default_strength()))
    }
}

impl From<NoiseChannel> for NoiseSpec {
    fn from(c: NoiseChannel) -> Self {
        NoiseSpec {
            kind: c.kind,
            strength: Some(c.strength),
        }
    }
}

/// Parses `kind[:strength]`, e.g. `depolarizing` or `amplitude-damping:0.3`.
impl FromStr for NoiseChannel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (kind, strength) = match s.split_once(':') {
            Some((k, v)) => {
                let v: f64 = v
                    .parse()
                    .map_err(|_| Error::InvalidNoise(format!("bad strength `{v}`")))?;
                (k.parse::<NoiseKind>()?, v)
            }
            None => {
                let k = s.parse::<NoiseKind>()?;
                (k, k.default_strength())
            }
        };
        NoiseChannel::new(kind, strength)
    }
}

fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}

impl NoiseChannel {
    pub fn new(kind: NoiseKind, strength: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&strength) {
            return Err(Error::InvalidNoise(format!(
                "{kind} strength {strength} outside [0, 1]"
            )));
        }
        let pauli = |p: Pauli| *p.unitary().matrix();
        let kraus = match kind {
            NoiseKind::Depolarizing => vec![
                pauli(Pauli::I) * re((1.0 - strength).sqrt()),
                pauli(Pauli::X) * re((strength / 3.0).sqrt()),
                pauli(Pauli::Y) * re((strength / 3.0).sqrt()),
                pauli(Pauli::Z) * re((strength / 3.0).sqrt()),
            ],
            NoiseKind::PhaseDamping => vec![
                pauli(Pauli::I) * re((1.0 - strength).sqrt()),
                pauli(Pauli::Z) * re(strength.sqrt()),
            ],
            NoiseKind::AmplitudeDamping => vec![
                Matrix2::new(re(1.0), re(0.0), re(0.0), re((1.0 - strength).sqrt())),
                Matrix2::new(re(0.0), re(strength.sqrt()), re(0.0), re(0.0)),
            ],
        };
        let channel = Self {
            kind,
            strength,
            kraus,
        };
        let completeness = channel
            .kraus
            .iter()
            .fold(Matrix2::zeros(), |acc, k| acc + k.adjoint() * k)
            - Matrix2::identity();
        if completeness.iter().any(|z| z.norm() > 1e-10) {
            return Err(Error::Invariant(format!("{kind} Kraus set is not trace preserving")));
        }
        Ok(channel)
    }

    /// The channel at its default (extreme) strength.
    pub fn default_for(kind: NoiseKind) -> Self {
        Self::new(kind, kind.default_strength()).expect("default strengths are valid")
    }

    pub fn kind(&self) -> NoiseKind {
        self.kind
    }

    pub fn strength(&self) -> f64 {
        self.strength
    }

    pub fn kraus(&self) -> &[Matrix2<C64>] {
        &self.kraus
    }
}

impl fmt::Display for NoiseChannel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.kind, self.strength)
    }
}

/// `Σ_k K_k ρ K_k†`.
pub fn apply_channel(ch: &NoiseChannel, rho: &DensityMatrix1Q) -> DensityMatrix1Q {
    let m = rho.matrix();
    let out = ch
        .kraus
        .iter()
        .fold(Matrix2::zeros(), |acc, k| acc + k * m * k.adjoint());
    DensityMatrix1Q::from_matrix_unchecked((out + out.adjoint()) * re(0.5))
}

/// Process matrix of the channel in the `(I, X, -iY, Z)` basis.
pub fn channel_chi(ch: &NoiseChannel) -> ProcessMatrix {
    ProcessMatrix::from_kraus(&ch.kraus).expect("valid channels have valid process matrices")
}

fn to_dyn(m: &nalgebra::Matrix4<C64>) -> DMatrix<C64> {
    DMatrix::from_fn(4, 4, |r, k| m[(r, k)])
}

/// Uhlmann fidelity `tr sqrt( sqrt(χ_b) χ_a sqrt(χ_b) )` between two process matrices.
pub fn channel_fidelity(chi_a: &ProcessMatrix, chi_b: &ProcessMatrix) -> Result<f64> {
    let (a, b) = (to_dyn(chi_a.matrix()), to_dyn(chi_b.matrix()));
    for (name, m) in [("first", &a), ("second", &b)] {
        let min = hermitian_eigen(m).0.min();
        if min < -MATRIX_TOL {
            return Err(Error::InvalidProcessMatrix(format!(
                "{name} argument has negative eigenvalue {min:.3e}"
            )));
        }
    }
    let sb = sqrt_psd(&b);
    let inner = &sb * a * &sb;
    let f = trace(&sqrt_psd(&inner)).re;
    Ok(f.clamp(0.0, 1.0))
}

/// Fidelities of one process matrix against the three default channels.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChannelComparison {
    pub depolarizing: f64,
    pub amplitude_damping: f64,
    pub phase_damping: f64,
}

/// Compares `chi` with the default depolarizing, amplitude-damping and
/// phase-damping channels.
pub fn compare_with_default_channels(chi: &ProcessMatrix) -> Result<ChannelComparison> {
    let f = |k| channel_fidelity(chi, &channel_chi(&NoiseChannel::default_for(k)));
    Ok(ChannelComparison {
        depolarizing: f(NoiseKind::Depolarizing)?,
        amplitude_damping: f(NoiseKind::AmplitudeDamping)?,
        phase_damping: f(NoiseKind::PhaseDamping)?,
    })
}
