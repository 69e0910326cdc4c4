//! Simulation and identification toolbox for multi-party quantum teleportation
//! over box-cluster and chain-type cluster states.
//!
//! The crate is layered bottom-up:
//!
//! - [`qsim`]: exact pure-state simulation of few-qubit registers (gates, Pauli
//!   expectation values, branch-enumerating measurement, multinomial shot sampling).
//! - [`cluster`]: box (ladder) and chain (path) interaction graphs, cluster-state
//!   preparation and stabilizer generators.
//! - [`teleport`]: the two networking teleportation protocols, Bob's correction
//!   calculus, exhaustive branch enumeration and shot-sampled tomography runs.
//! - [`tomography`]: single-qubit state tomography, process-matrix reconstruction,
//!   fidelities and the classical-process thresholds.
//! - [`noise`]: depolarizing, phase-damping and amplitude-damping channels.
//! - [`witness`]: genuine multipartite entanglement witnesses for the cluster states.
//! - [`harness`]: experiment configuration, report generation and the command
//!   implementations behind the `cluster-teleport` binary.
//!
//! # Qubit ordering
//!
//! Every register uses the same convention: qubit 0 is the most significant bit of
//! the basis-state index. For the teleportation protocols qubit 0 carries the input
//! state and qubits `1..=N` are the cluster qubits, so Alice owns qubit 1 and Bob
//! owns qubit `N`.

#![forbid(unsafe_code)]

pub mod cluster;
pub mod error;
pub mod harness;
mod linalg;
pub mod noise;
pub mod qsim;
pub mod teleport;
pub mod tomography;
pub mod witness;

#[cfg(test)]
mod testutil;

pub use error::{Error, Result};

/// Complex scalar used throughout the crate.
pub type C64 = num_complex::Complex64;
