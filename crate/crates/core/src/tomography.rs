//! Single-qubit state and process tomography, fidelities and the classical
//! teleportation benchmarks.
//!
//! Process matrices use the operator basis `M = (I, X, -iY, Z)` with
//! `E(ρ) = Σ_mn χ_mn M_m ρ M_n†`. The ideal teleportation process is the identity
//! channel, whose χ has a single non-zero entry `χ_11 = 1`.
//!
//! State fidelity is the overlap `<ψ|ρ|ψ>`; with that convention the average state
//! fidelity of a channel is `(2 F_p + 1) / 3`.

use std::fmt;
use std::sync::OnceLock;

use nalgebra::{DMatrix, DVector, Matrix2, Matrix4};
use serde::{Deserialize, Serialize};

use crate::linalg::{hermitian_eigen, project_psd_unit_trace, trace};
use crate::qsim::{apply_1q, Pauli, StateVector, Unitary1Q};
use crate::{Error, Result, C64};

/// Best process fidelity any classical process reaches for the identity target.
pub const CLASSICAL_PROCESS_FIDELITY: f64 = 0.683;

/// Best average state fidelity reachable classically.
pub const CLASSICAL_AVG_STATE_FIDELITY: f64 = 0.789;

/// Labels of the process-matrix operator basis.
pub const PROCESS_BASIS: [&str; 4] = ["I", "X", "-iY", "Z"];

/// Hermiticity, trace and positivity tolerance for density and process matrices.
pub const MATRIX_TOL: f64 = 1e-9;

/// Slack allowed on sampled expectation values before they are rejected.
pub const EXPECTATION_SLACK: f64 = 0.05;

fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

fn to_dyn2(m: &Matrix2<C64>) -> DMatrix<C64> {
    DMatrix::from_fn(2, 2, |r, k| m[(r, k)])
}

fn to_dyn4(m: &Matrix4<C64>) -> DMatrix<C64> {
    DMatrix::from_fn(4, 4, |r, k| m[(r, k)])
}

fn from_dyn2(m: &DMatrix<C64>) -> Matrix2<C64> {
    Matrix2::from_fn(|r, k| m[(r, k)])
}

fn from_dyn4(m: &DMatrix<C64>) -> Matrix4<C64> {
    Matrix4::from_fn(|r, k| m[(r, k)])
}

fn check_density(m: &DMatrix<C64>, what: &str) -> std::result::Result<(), String> {
    if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(format!("{what} has non-finite entries"));
    }
    let herm = (m - m.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max);
    if herm > MATRIX_TOL {
        return Err(format!("{what} is not Hermitian (deviation {herm:.3e})"));
    }
    let tr = trace(m);
    if (tr - c(1.0)).norm() > MATRIX_TOL {
        return Err(format!("{what} has trace {:.12}", tr.re));
    }
    let (values, _) = hermitian_eigen(m);
    if values.min() < -MATRIX_TOL {
        return Err(format!("{what} has negative eigenvalue {:.3e}", values.min()));
    }
    Ok(())
}

/// The Pauli matrices as used for tomography.
fn pauli2(p: Pauli) -> Matrix2<C64> {
    *p.unitary().matrix()
}

/// Single-qubit density operator: Hermitian, unit trace, positive semidefinite.
#[derive(Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MatrixRepr", into = "MatrixRepr")]
pub struct DensityMatrix1Q(Matrix2<C64>);

impl DensityMatrix1Q {
    pub fn new(m: Matrix2<C64>) -> Result<Self> {
        check_density(&to_dyn2(&m), "density matrix").map_err(Error::InvalidDensityMatrix)?;
        Ok(Self(m))
    }

    /// `|ψ><ψ|` for a single-qubit pure state.
    pub fn from_pure(psi: &StateVector) -> Result<Self> {
        if psi.n_qubits() != 1 {
            return Err(Error::LengthMismatch {
                expected: 2,
                actual: psi.dim(),
            });
        }
        let a = psi.amplitudes();
        Ok(Self(Matrix2::from_fn(|r, k| a[r] * a[k].conj())))
    }

    pub fn maximally_mixed() -> Self {
        Self(Matrix2::identity() * c(0.5))
    }

    /// `(I + r·σ)/2` without any positivity check.
    pub(crate) fn from_bloch_unchecked(r: [f64; 3]) -> Matrix2<C64> {
        (Matrix2::identity()
            + pauli2(Pauli::X) * c(r[0])
            + pauli2(Pauli::Y) * c(r[1])
            + pauli2(Pauli::Z) * c(r[2]))
            * c(0.5)
    }

    pub(crate) fn from_matrix_unchecked(m: Matrix2<C64>) -> Self {
        Self(m)
    }

    pub fn matrix(&self) -> &Matrix2<C64> {
        &self.0
    }

    /// `tr(ρ P)`.
    pub fn expectation(&self, p: Pauli) -> f64 {
        (self.0 * pauli2(p)).trace().re
    }

    /// Bloch vector `(<X>, <Y>, <Z>)`.
    pub fn bloch(&self) -> [f64; 3] {
        [Pauli::X, Pauli::Y, Pauli::Z].map(|p| self.expectation(p))
    }

    /// `U ρ U†`.
    pub fn conjugate(&self, u: &Unitary1Q) -> Self {
        Self(u.matrix() * self.0 * u.matrix().adjoint())
    }

    /// Probability of each eigenvalue (`+1`, `-1`) when measuring `p`.
    pub fn outcome_probabilities(&self, p: Pauli) -> [f64; 2] {
        let e = self.expectation(p).clamp(-1.0, 1.0);
        [(1.0 + e) / 2.0, (1.0 - e) / 2.0]
    }
}

impl fmt::Debug for DensityMatrix1Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b = self.bloch();
        write!(f, "DensityMatrix1Q(bloch = [{:.6}, {:.6}, {:.6}])", b[0], b[1], b[2])
    }
}

/// Single-qubit state tomography from Pauli expectation values.
///
/// Builds `(I + <X>X + <Y>Y + <Z>Z)/2`; if the Bloch vector is longer than one
/// the matrix is projected back onto the state space by clipping its negative
/// eigenvalue and renormalizing.
pub fn state_tomo_1q(ex: f64, ey: f64, ez: f64) -> Result<DensityMatrix1Q> {
    for e in [ex, ey, ez] {
        if !e.is_finite() || e.abs() > 1.0 + EXPECTATION_SLACK {
            return Err(Error::ExpectationOutOfRange(e));
        }
    }
    let raw = DensityMatrix1Q::from_bloch_unchecked([ex, ey, ez]);
    if ex * ex + ey * ey + ez * ez <= 1.0 {
        return Ok(DensityMatrix1Q(raw));
    }
    let p = project_psd_unit_trace(&to_dyn2(&raw));
    DensityMatrix1Q::new(from_dyn2(&p.matrix))
}

/// The four tomography inputs `|0>, |1>, |+>, |R>`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CanonicalInput {
    Zero,
    One,
    Plus,
    R,
}

impl CanonicalInput {
    pub const ALL: [CanonicalInput; 4] = [
        CanonicalInput::Zero,
        CanonicalInput::One,
        CanonicalInput::Plus,
        CanonicalInput::R,
    ];

    /// Prepares the state from `|0>` the way a circuit would: `X` for `|1>`, `H`
    /// for `|+>`, and `H` followed by `S` for `|R>`.
    pub fn state(self) -> StateVector {
        let zero = StateVector::zero(1).expect("one qubit");
        let gates: &[Unitary1Q] = match self {
            CanonicalInput::Zero => &[],
            CanonicalInput::One => &[Unitary1Q::x()],
            CanonicalInput::Plus => &[Unitary1Q::h()],
            CanonicalInput::R => &[Unitary1Q::h(), Unitary1Q::s()],
        };
        gates
            .iter()
            .fold(zero, |s, g| apply_1q(&s, g, 0).expect("qubit 0 exists"))
    }

    pub fn label(self) -> &'static str {
        match self {
            CanonicalInput::Zero => "zero",
            CanonicalInput::One => "one",
            CanonicalInput::Plus => "plus",
            CanonicalInput::R => "r",
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for CanonicalInput {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Output states for the four canonical inputs, indexed by [`CanonicalInput`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TomographyOutputs {
    pub zero: DensityMatrix1Q,
    pub one: DensityMatrix1Q,
    pub plus: DensityMatrix1Q,
    pub r: DensityMatrix1Q,
}

impl TomographyOutputs {
    pub fn from_fn(mut f: impl FnMut(CanonicalInput) -> Result<DensityMatrix1Q>) -> Result<Self> {
        Ok(Self {
            zero: f(CanonicalInput::Zero)?,
            one: f(CanonicalInput::One)?,
            plus: f(CanonicalInput::Plus)?,
            r: f(CanonicalInput::R)?,
        })
    }

    pub fn get(&self, input: CanonicalInput) -> &DensityMatrix1Q {
        match input {
            CanonicalInput::Zero => &self.zero,
            CanonicalInput::One => &self.one,
            CanonicalInput::Plus => &self.plus,
            CanonicalInput::R => &self.r,
        }
    }

    fn matrices(&self) -> [Matrix2<C64>; 4] {
        CanonicalInput::ALL.map(|i| *self.get(i).matrix())
    }
}

/// The basis operators `I, X, -iY, Z`.
pub fn process_basis() -> [Matrix2<C64>; 4] {
    [
        Matrix2::identity(),
        pauli2(Pauli::X),
        pauli2(Pauli::Y) * C64::new(0.0, -1.0),
        pauli2(Pauli::Z),
    ]
}

/// 4×4 process matrix χ in the `(I, X, -iY, Z)` basis.
#[derive(Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ProcessRepr", into = "ProcessRepr")]
pub struct ProcessMatrix(Matrix4<C64>);

impl ProcessMatrix {
    /// Validates Hermiticity, unit trace and positivity within [`MATRIX_TOL`].
    pub fn new(m: Matrix4<C64>) -> Result<Self> {
        check_density(&to_dyn4(&m), "process matrix").map_err(Error::InvalidProcessMatrix)?;
        Ok(Self(m))
    }

    /// χ of the identity channel.
    pub fn identity_process() -> Self {
        let mut m = Matrix4::zeros();
        m[(0, 0)] = c(1.0);
        Self(m)
    }

    /// χ of the channel `ρ -> Σ_k K_k ρ K_k†`.
    pub fn from_kraus(kraus: &[Matrix2<C64>]) -> Result<Self> {
        let basis = process_basis();
        let mut chi = Matrix4::zeros();
        for k in kraus {
            // K = Σ_m a_m M_m with a_m = tr(M_m† K)/2
            let a: Vec<C64> = basis
                .iter()
                .map(|m| (m.adjoint() * k).trace() * c(0.5))
                .collect();
            for r in 0..4 {
                for s in 0..4 {
                    chi[(r, s)] += a[r] * a[s].conj();
                }
            }
        }
        Self::new(chi)
    }

    pub fn matrix(&self) -> &Matrix4<C64> {
        &self.0
    }

    pub fn entry(&self, m: usize, n: usize) -> C64 {
        self.0[(m, n)]
    }

    /// `Σ_mn χ_mn M_m ρ M_n†`.
    pub fn apply(&self, rho: &DensityMatrix1Q) -> DensityMatrix1Q {
        DensityMatrix1Q(apply_chi(&self.0, rho.matrix()))
    }

    /// Eigenvalues, ascending.
    pub fn eigenvalues(&self) -> Vec<f64> {
        hermitian_eigen(&to_dyn4(&self.0)).0.iter().copied().collect()
    }
}

impl fmt::Debug for ProcessMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ProcessMatrix [")?;
        for r in 0..4 {
            write!(f, "  ")?;
            for k in 0..4 {
                let z = self.0[(r, k)];
                write!(f, "{:>8.4}{:+.4}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

fn apply_chi(chi: &Matrix4<C64>, rho: &Matrix2<C64>) -> Matrix2<C64> {
    let basis = process_basis();
    let mut out = Matrix2::zeros();
    for m in 0..4 {
        for n in 0..4 {
            if chi[(m, n)] != c(0.0) {
                out += basis[m] * rho * basis[n].adjoint() * chi[(m, n)];
            }
        }
    }
    out
}

/// LU factorization of the 16×16 map χ -> (E(ρ_k))_k for the canonical inputs.
fn inversion_system() -> &'static nalgebra::LU<C64, nalgebra::Dyn, nalgebra::Dyn> {
    static SYSTEM: OnceLock<nalgebra::LU<C64, nalgebra::Dyn, nalgebra::Dyn>> = OnceLock::new();
    SYSTEM.get_or_init(|| {
        let basis = process_basis();
        let inputs = CanonicalInput::ALL.map(|i| *DensityMatrix1Q::from_pure(&i.state()).expect("1 qubit").matrix());
        let mut a = DMatrix::zeros(16, 16);
        for (k, rho) in inputs.iter().enumerate() {
            for m in 0..4 {
                for n in 0..4 {
                    let e = basis[m] * rho * basis[n].adjoint();
                    for r in 0..2 {
                        for s in 0..2 {
                            a[(4 * k + 2 * r + s, 4 * m + n)] = e[(r, s)];
                        }
                    }
                }
            }
        }
        a.lu()
    })
}

/// Linear inversion without any post-processing.
pub(crate) fn linear_inversion(outputs: &[Matrix2<C64>; 4]) -> Result<Matrix4<C64>> {
    let mut y = DVector::zeros(16);
    for (k, out) in outputs.iter().enumerate() {
        for r in 0..2 {
            for s in 0..2 {
                y[4 * k + 2 * r + s] = out[(r, s)];
            }
        }
    }
    let x = inversion_system()
        .solve(&y)
        .ok_or_else(|| Error::Invariant("process tomography system is singular".into()))?;
    Ok(Matrix4::from_fn(|m, n| x[4 * m + n]))
}

/// Process reconstruction together with its diagnostics.
#[derive(Clone, Debug)]
pub struct ProcessReconstruction {
    /// Hermitized, PSD-projected, trace-normalized χ.
    pub chi: ProcessMatrix,
    /// Linear-inversion χ before any post-processing.
    pub raw: Matrix4<C64>,
    /// Smallest eigenvalue of the Hermitized raw χ.
    pub min_eigenvalue: f64,
    /// Whether negative eigenvalues were clipped.
    pub clipped: bool,
}

/// Reconstructs χ from the outputs of the four canonical inputs by linear
/// inversion, then Hermitizes, clips negative eigenvalues and renormalizes.
pub fn reconstruct_process(outputs: &TomographyOutputs) -> Result<ProcessReconstruction> {
    let raw = linear_inversion(&outputs.matrices())?;
    let p = project_psd_unit_trace(&to_dyn4(&raw));
    let chi = ProcessMatrix::new(from_dyn4(&p.matrix))?;
    Ok(ProcessReconstruction {
        chi,
        raw,
        min_eigenvalue: p.min_eigenvalue,
        clipped: p.clipped,
    })
}

/// Process tomography: χ from the four input/output pairs.
pub fn process_tomo_1q(outputs: &TomographyOutputs) -> Result<ProcessMatrix> {
    Ok(reconstruct_process(outputs)?.chi)
}

/// Sensitivity of `tr(χ_raw χ_ideal)` to each output Bloch component,
/// `[input][x, y, z]`. The raw reconstruction is affine in the outputs, so this is
/// the exact gradient used for first-order error propagation.
pub fn fidelity_sensitivity(chi_ideal: &ProcessMatrix) -> Result<[[f64; 3]; 4]> {
    let f = |outs: &[Matrix2<C64>; 4]| -> Result<f64> {
        Ok((linear_inversion(outs)? * chi_ideal.matrix()).trace().re)
    };
    let base = [DensityMatrix1Q::from_bloch_unchecked([0.0; 3]); 4];
    let f0 = f(&base)?;
    let mut grad = [[0.0; 3]; 4];
    for k in 0..4 {
        for axis in 0..3 {
            let mut r = [0.0; 3];
            r[axis] = 1.0;
            let mut outs = base;
            outs[k] = DensityMatrix1Q::from_bloch_unchecked(r);
            grad[k][axis] = f(&outs)? - f0;
        }
    }
    Ok(grad)
}

/// Process fidelity `Re tr(χ χ_ideal)`.
pub fn process_fidelity(chi: &ProcessMatrix, chi_ideal: &ProcessMatrix) -> f64 {
    let t = (chi.matrix() * chi_ideal.matrix()).trace();
    debug_assert!(t.im.abs() < 1e-9, "imaginary process fidelity {}", t.im);
    t.re
}

/// State fidelity `<ψ|ρ|ψ>` of a pure reference state.
pub fn state_fidelity(psi: &StateVector, rho: &DensityMatrix1Q) -> Result<f64> {
    if psi.n_qubits() != 1 {
        return Err(Error::LengthMismatch {
            expected: 2,
            actual: psi.dim(),
        });
    }
    let a = psi.amplitudes();
    let m = rho.matrix();
    let mut f = C64::new(0.0, 0.0);
    for r in 0..2 {
        for k in 0..2 {
            f += a[r].conj() * m[(r, k)] * a[k];
        }
    }
    Ok(f.re.clamp(0.0, 1.0))
}

/// Average state fidelity `(2F + 1)/3` for a process fidelity `F`.
pub fn avg_state_fidelity(f_process: f64) -> Result<f64> {
    if !(-MATRIX_TOL..=1.0 + MATRIX_TOL).contains(&f_process) {
        return Err(Error::FidelityOutOfRange(f_process));
    }
    Ok((2.0 * f_process + 1.0) / 3.0)
}

/// Fidelities of a process against the classical benchmarks.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FidelityReport {
    pub f_process: f64,
    pub f_avg_state: f64,
    pub f_c_threshold: f64,
    pub f_s_threshold: f64,
    /// `true` iff `f_process` strictly exceeds the classical bound.
    pub surpasses_classical: bool,
}

/// Compares a process fidelity against the classical thresholds.
pub fn classify(f_process: f64) -> Result<FidelityReport> {
    Ok(FidelityReport {
        f_process,
        f_avg_state: avg_state_fidelity(f_process)?,
        f_c_threshold: CLASSICAL_PROCESS_FIDELITY,
        f_s_threshold: CLASSICAL_AVG_STATE_FIDELITY,
        surpasses_classical: f_process > CLASSICAL_PROCESS_FIDELITY,
    })
}

type Entries = Vec<Vec<[f64; 2]>>;

fn entries<const R: usize>(rows: impl Fn(usize, usize) -> C64) -> Entries {
    (0..R)
        .map(|r| (0..R).map(|k| rows(r, k)).map(|z| [z.re, z.im]).collect())
        .collect()
}

fn parse_entries(e: &Entries, dim: usize) -> std::result::Result<Vec<C64>, String> {
    if e.len() != dim || e.iter().any(|row| row.len() != dim) {
        return Err(format!("expected a {dim}x{dim} matrix"));
    }
    Ok(e.iter().flatten().map(|&[re, im]| C64::new(re, im)).collect())
}

#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    entries: Entries,
}

impl From<DensityMatrix1Q> for MatrixRepr {
    fn from(d: DensityMatrix1Q) -> Self {
        Self {
            entries: entries::<2>(|r, k| d.0[(r, k)]),
        }
    }
}

impl TryFrom<MatrixRepr> for DensityMatrix1Q {
    type Error = Error;

    fn try_from(r: MatrixRepr) -> Result<Self> {
        let v = parse_entries(&r.entries, 2).map_err(Error::InvalidDensityMatrix)?;
        DensityMatrix1Q::new(Matrix2::from_row_slice(&v))
    }
}

#[derive(Serialize, Deserialize)]
struct ProcessRepr {
    basis: Vec<String>,
    entries: Entries,
}

impl From<ProcessMatrix> for ProcessRepr {
    fn from(p: ProcessMatrix) -> Self {
        Self {
            basis: PROCESS_BASIS.iter().map(|s| s.to_string()).collect(),
            entries: entries::<4>(|r, k| p.0[(r, k)]),
        }
    }
}

impl TryFrom<ProcessRepr> for ProcessMatrix {
    type Error = Error;

    fn try_from(r: ProcessRepr) -> Result<Self> {
        if r.basis != PROCESS_BASIS {
            return Err(Error::InvalidProcessMatrix(format!(
                "unsupported operator basis {:?}",
                r.basis
            )));
        }
        let v = parse_entries(&r.entries, 4).map_err(Error::InvalidProcessMatrix)?;
        ProcessMatrix::new(Matrix4::from_row_slice(&v))
    }
}
