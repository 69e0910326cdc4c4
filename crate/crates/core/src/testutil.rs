//! Dense-matrix oracles for unit tests. These build full 2^n × 2^n operators by
//! Kronecker products and never touch the index arithmetic of `qsim`.

use nalgebra::{DMatrix, Matrix2};
use rand::Rng;

use crate::qsim::{seeded_rng, Basis, Pauli, PauliString, StateVector, Unitary1Q, Unitary2Q};
use crate::C64;

pub fn kron(a: &DMatrix<C64>, b: &DMatrix<C64>) -> DMatrix<C64> {
    a.kronecker(b)
}

fn m2(m: &Matrix2<C64>) -> DMatrix<C64> {
    DMatrix::from_fn(2, 2, |r, c| m[(r, c)])
}

pub fn embed(ops: &[DMatrix<C64>]) -> DMatrix<C64> {
    ops.iter()
        .skip(1)
        .fold(ops[0].clone(), |acc, m| kron(&acc, m))
}

pub fn dense_1q(u: &Unitary1Q, n: usize, q: usize) -> DMatrix<C64> {
    let ops: Vec<_> = (0..n)
        .map(|k| if k == q { m2(u.matrix()) } else { DMatrix::identity(2, 2) })
        .collect();
    embed(&ops)
}

/// Two-qubit gate on (a, b) via |0><0|,|0><1|,... expansion on qubit a.
pub fn dense_2q(u: &Unitary2Q, n: usize, a: usize, b: usize) -> DMatrix<C64> {
    let m = u.matrix();
    let mut total = DMatrix::zeros(1 << n, 1 << n);
    for ra in 0..2 {
        for ca in 0..2 {
            let mut ea = DMatrix::zeros(2, 2);
            ea[(ra, ca)] = C64::new(1.0, 0.0);
            let block = DMatrix::from_fn(2, 2, |rb, cb| m[(2 * ra + rb, 2 * ca + cb)]);
            let ops: Vec<_> = (0..n)
                .map(|k| {
                    if k == a {
                        ea.clone()
                    } else if k == b {
                        block.clone()
                    } else {
                        DMatrix::identity(2, 2)
                    }
                })
                .collect();
            total += embed(&ops);
        }
    }
    total
}

pub fn dense_pauli(p: &PauliString) -> DMatrix<C64> {
    let ops: Vec<_> = p.labels().iter().map(|l| m2(l.unitary().matrix())).collect();
    embed(&ops)
}

pub fn dense_projector(n: usize, q: usize, basis: Basis, value: i8) -> DMatrix<C64> {
    let p = match basis {
        Basis::Z => Pauli::Z,
        Basis::X => Pauli::X,
    };
    let mut labels = vec![Pauli::I; n];
    labels[q] = p;
    let id = DMatrix::<C64>::identity(1 << n, 1 << n);
    (id + dense_pauli(&PauliString::new(labels)) * C64::new(f64::from(value), 0.0)) * C64::new(0.5, 0.0)
}

pub fn random_state(n: usize, seed: u64) -> StateVector {
    let mut rng = seeded_rng(seed);
    let amps = (0..1 << n)
        .map(|_| C64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5))
        .collect();
    StateVector::normalized(amps).unwrap()
}
