//! Exact pure-state simulation of small qubit registers.
//!
//! States are dense amplitude vectors with qubit 0 stored in the most significant
//! bit of the basis index. Operations return new values; nothing is mutated in
//! place behind the caller's back.

mod gates;
mod measure;
mod pauli;
mod sampling;
mod state;

pub use gates::{apply_1q, apply_2q, apply_cnot, apply_cz, Unitary1Q, Unitary2Q};
pub use measure::{measure, measure_discard, Basis, MeasurementOutcome, ReducedOutcome};
pub use pauli::{expectation, Pauli, PauliString};
pub use sampling::{derive_seed, sample_counts, sample_counts_with, seeded_rng, stream_rng};
pub use state::StateVector;

/// Tolerance used for norm, unitarity and probability-completeness invariants.
pub const NORM_TOL: f64 = 1e-10;

/// Tolerance on the sum of a probability vector handed to the sampler.
pub const PROB_SUM_TOL: f64 = 1e-9;
