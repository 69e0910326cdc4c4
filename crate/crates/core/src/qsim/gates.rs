use nalgebra::{Matrix2, Matrix4};

use crate::{Error, Result, C64};

use super::{StateVector, NORM_TOL};

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Single-qubit unitary.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Unitary1Q(Matrix2<C64>);

impl Unitary1Q {
    /// Wraps a matrix after checking `U†U = I` within [`NORM_TOL`].
    pub fn new(m: Matrix2<C64>) -> Result<Self> {
        let d = m.adjoint() * m - Matrix2::identity();
        if d.iter().any(|z| z.norm() > NORM_TOL) {
            return Err(Error::NotUnitary);
        }
        Ok(Self(m))
    }

    pub fn matrix(&self) -> &Matrix2<C64> {
        &self.0
    }

    pub fn identity() -> Self {
        Self(Matrix2::identity())
    }

    pub fn x() -> Self {
        Self(Matrix2::new(c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.)))
    }

    pub fn y() -> Self {
        Self(Matrix2::new(c(0., 0.), c(0., -1.), c(0., 1.), c(0., 0.)))
    }

    pub fn z() -> Self {
        Self(Matrix2::new(c(1., 0.), c(0., 0.), c(0., 0.), c(-1., 0.)))
    }

    pub fn h() -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        Self(Matrix2::new(c(h, 0.), c(h, 0.), c(h, 0.), c(-h, 0.)))
    }

    /// Phase gate `S = |0><0| + i|1><1|`.
    pub fn s() -> Self {
        Self(Matrix2::new(c(1., 0.), c(0., 0.), c(0., 0.), c(0., 1.)))
    }

    pub fn sdg() -> Self {
        Self(Matrix2::new(c(1., 0.), c(0., 0.), c(0., 0.), c(0., -1.)))
    }

    pub fn adjoint(&self) -> Self {
        Self(self.0.adjoint())
    }

}

/// Matrix product: `a * b` applies `b` first.
impl std::ops::Mul for Unitary1Q {
    type Output = Unitary1Q;

    fn mul(self, rhs: Unitary1Q) -> Unitary1Q {
        Unitary1Q(self.0 * rhs.0)
    }
}

/// Two-qubit unitary in the basis `|ab>` with the first qubit most significant.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Unitary2Q(Matrix4<C64>);

impl Unitary2Q {
    pub fn new(m: Matrix4<C64>) -> Result<Self> {
        let d = m.adjoint() * m - Matrix4::identity();
        if d.iter().any(|z| z.norm() > NORM_TOL) {
            return Err(Error::NotUnitary);
        }
        Ok(Self(m))
    }

    pub fn matrix(&self) -> &Matrix4<C64> {
        &self.0
    }

    /// CNOT with the first qubit as control.
    pub fn cnot() -> Self {
        let mut m = Matrix4::zeros();
        m[(0, 0)] = c(1., 0.);
        m[(1, 1)] = c(1., 0.);
        m[(2, 3)] = c(1., 0.);
        m[(3, 2)] = c(1., 0.);
        Self(m)
    }

    pub fn cz() -> Self {
        Self(Matrix4::from_diagonal(&nalgebra::Vector4::new(
            c(1., 0.),
            c(1., 0.),
            c(1., 0.),
            c(-1., 0.),
        )))
    }
}

/// Applies `u` to qubit `q`.
pub fn apply_1q(state: &StateVector, u: &Unitary1Q, q: usize) -> Result<StateVector> {
    state.check_qubit(q)?;
    let m = u.matrix();
    let mask = state.mask(q);
    let mut amps = state.amplitudes().to_vec();
    for i in 0..amps.len() {
        if i & mask == 0 {
            let a0 = amps[i];
            let a1 = amps[i | mask];
            amps[i] = m[(0, 0)] * a0 + m[(0, 1)] * a1;
            amps[i | mask] = m[(1, 0)] * a0 + m[(1, 1)] * a1;
        }
    }
    Ok(StateVector::from_raw(state.n_qubits(), amps))
}

/// Applies a general two-qubit unitary to the ordered pair `(a, b)`; `a` plays the
/// role of the more significant qubit of `u`.
pub fn apply_2q(state: &StateVector, u: &Unitary2Q, a: usize, b: usize) -> Result<StateVector> {
    state.check_qubit(a)?;
    state.check_qubit(b)?;
    if a == b {
        return Err(Error::SameQubit(a));
    }
    let m = u.matrix();
    let (ma, mb) = (state.mask(a), state.mask(b));
    let mut amps = state.amplitudes().to_vec();
    for i in 0..amps.len() {
        if i & (ma | mb) == 0 {
            let idx = [i, i | mb, i | ma, i | ma | mb];
            let v = idx.map(|k| amps[k]);
            for (r, &k) in idx.iter().enumerate() {
                amps[k] = (0..4).map(|col| m[(r, col)] * v[col]).sum();
            }
        }
    }
    Ok(StateVector::from_raw(state.n_qubits(), amps))
}

/// Controlled-Z between `a` and `b`: phase −1 on basis states where both are 1.
pub fn apply_cz(state: &StateVector, a: usize, b: usize) -> Result<StateVector> {
    state.check_qubit(a)?;
    state.check_qubit(b)?;
    if a == b {
        return Err(Error::SameQubit(a));
    }
    let both = state.mask(a) | state.mask(b);
    let amps = state
        .amplitudes()
        .iter()
        .enumerate()
        .map(|(i, &z)| if i & both == both { -z } else { z })
        .collect();
    Ok(StateVector::from_raw(state.n_qubits(), amps))
}

/// CNOT with `control` and `target`.
pub fn apply_cnot(state: &StateVector, control: usize, target: usize) -> Result<StateVector> {
    state.check_qubit(control)?;
    state.check_qubit(target)?;
    if control == target {
        return Err(Error::SameQubit(control));
    }
    let (mc, mt) = (state.mask(control), state.mask(target));
    let mut amps = state.amplitudes().to_vec();
    for i in 0..amps.len() {
        if i & mc != 0 && i & mt == 0 {
            amps.swap(i, i | mt);
        }
    }
    Ok(StateVector::from_raw(state.n_qubits(), amps))
}
