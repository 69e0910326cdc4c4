//! Reference implementations for integration tests. Nothing here calls into the
//! library's simulator: states are plain amplitude vectors and gates are applied
//! by index arithmetic.

#![allow(dead_code)]

use num_complex::Complex64 as C;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

pub type M2 = [[C; 2]; 2];

pub fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

pub fn mat(letter: char) -> M2 {
    let (o, z, i) = (c(1.0, 0.0), c(0.0, 0.0), c(0.0, 1.0));
    let h = std::f64::consts::FRAC_1_SQRT_2;
    match letter {
        'I' => [[o, z], [z, o]],
        'X' => [[z, o], [o, z]],
        'Y' => [[z, -i], [i, z]],
        'Z' => [[o, z], [z, -o]],
        'H' => [[c(h, 0.0), c(h, 0.0)], [c(h, 0.0), c(-h, 0.0)]],
        _ => panic!("unknown letter {letter}"),
    }
}

pub fn mul(a: &M2, b: &M2) -> M2 {
    let mut out = [[c(0.0, 0.0); 2]; 2];
    for r in 0..2 {
        for k in 0..2 {
            out[r][k] = a[r][0] * b[0][k] + a[r][1] * b[1][k];
        }
    }
    out
}

/// Left-to-right product of the letters of `word`.
pub fn word_matrix(word: &str) -> M2 {
    word.chars().fold(mat('I'), |acc, l| mul(&acc, &mat(l)))
}

pub fn apply(m: &M2, v: [C; 2]) -> [C; 2] {
    [m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1]]
}

/// `a = phase · b` for a phase in `{±1, ±i}`.
pub fn equal_up_to_quarter_phase(a: &M2, b: &M2, tol: f64) -> bool {
    [c(1.0, 0.0), c(-1.0, 0.0), c(0.0, 1.0), c(0.0, -1.0)].iter().any(|ph| {
        (0..2).all(|r| (0..2).all(|k| (a[r][k] - *ph * b[r][k]).norm() < tol))
    })
}

pub fn overlap_sq(a: [C; 2], b: [C; 2]) -> f64 {
    (a[0].conj() * b[0] + a[1].conj() * b[1]).norm_sqr()
}

pub fn haar_qubit(rng: &mut ChaCha8Rng) -> [C; 2] {
    let mut g = || -> f64 { StandardNormal.sample(rng) };
    let v = [c(g(), g()), c(g(), g())];
    let norm = (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
    [v[0] / norm, v[1] / norm]
}

pub fn haar_inputs(count: usize, seed: u64) -> Vec<[C; 2]> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| haar_qubit(&mut rng)).collect()
}

/// Dense register, qubit 0 most significant.
pub struct Dense {
    pub n: usize,
    pub amps: Vec<C>,
}

impl Dense {
    fn bit(&self, q: usize) -> usize {
        1 << (self.n - 1 - q)
    }

    pub fn h(&mut self, q: usize) {
        let b = self.bit(q);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        for i in 0..self.amps.len() {
            if i & b == 0 {
                let (x, y) = (self.amps[i], self.amps[i | b]);
                self.amps[i] = (x + y) * s;
                self.amps[i | b] = (x - y) * s;
            }
        }
    }

    pub fn cz(&mut self, a: usize, b: usize) {
        let (ba, bb) = (self.bit(a), self.bit(b));
        for (i, amp) in self.amps.iter_mut().enumerate() {
            if i & ba != 0 && i & bb != 0 {
                *amp = -*amp;
            }
        }
    }

    pub fn cnot(&mut self, control: usize, target: usize) {
        let (bc, bt) = (self.bit(control), self.bit(target));
        for i in 0..self.amps.len() {
            if i & bc != 0 && i & bt == 0 {
                self.amps.swap(i, i | bt);
            }
        }
    }
}

/// Cluster edges on labels `1..=n`: ladder for box, path for chain.
pub fn oracle_edges(is_box: bool, n: usize) -> Vec<(usize, usize)> {
    if !is_box {
        return (1..n).map(|a| (a, a + 1)).collect();
    }
    let mut e = Vec::new();
    for a in 1..=n {
        for b in a + 1..=n {
            let rung = a % 2 == 1 && b == a + 1;
            let rail = b == a + 2;
            if rung || rail {
                e.push((a, b));
            }
        }
    }
    e
}

/// Input on qubit 0 and the cluster on qubits `1..=n`.
pub fn oracle_register(is_box: bool, n: usize, input: [C; 2]) -> Dense {
    let dim = 1 << n;
    let amp = c((dim as f64).powf(-0.5), 0.0);
    let mut amps = Vec::with_capacity(2 * dim);
    for a in input {
        amps.extend(std::iter::repeat_n(a * amp, dim));
    }
    let mut d = Dense { n: n + 1, amps };
    for (a, b) in oracle_edges(is_box, n) {
        d.cz(a, b);
    }
    d
}

/// `true` if participant `i` measures in X.
pub fn oracle_x_basis(is_box: bool, i: usize) -> bool {
    !is_box || i.is_multiple_of(2) || i == 3
}

pub struct OracleBranch {
    /// Bits of qubits 0 and 1 after the Bell circuit.
    pub j: (bool, bool),
    pub m: Vec<i8>,
    pub probability: f64,
    /// Normalized Bob state.
    pub bob: [C; 2],
}

/// Every branch with probability above `1e-12`. All measurements are rotated to
/// the computational basis, so each branch is read directly off two amplitudes.
pub fn oracle_branches(is_box: bool, n: usize, input: [C; 2]) -> Vec<OracleBranch> {
    let mut d = oracle_register(is_box, n, input);
    d.cnot(0, 1);
    d.h(0);
    for i in 2..n {
        if oracle_x_basis(is_box, i) {
            d.h(i);
        }
    }
    let mut out = Vec::new();
    for prefix in 0..(1usize << n) {
        let a0 = d.amps[prefix << 1];
        let a1 = d.amps[(prefix << 1) | 1];
        let p = a0.norm_sqr() + a1.norm_sqr();
        if p < 1e-12 {
            continue;
        }
        let bit = |q: usize| prefix & (1 << (n - 1 - q)) != 0;
        out.push(OracleBranch {
            j: (bit(0), bit(1)),
            m: (2..n).map(|i| if bit(i) { -1 } else { 1 }).collect(),
            probability: p,
            bob: [a0 / p.sqrt(), a1 / p.sqrt()],
        });
    }
    out
}

pub fn canonical_inputs() -> Vec<[C; 2]> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    vec![
        [c(1.0, 0.0), c(0.0, 0.0)],
        [c(0.0, 0.0), c(1.0, 0.0)],
        [c(h, 0.0), c(h, 0.0)],
        [c(h, 0.0), c(0.0, h)],
    ]
}

pub const BOX_SIZES: [usize; 5] = [4, 6, 8, 10, 12];
pub const CHAIN_SIZES: [usize; 6] = [2, 4, 6, 8, 10, 12];
