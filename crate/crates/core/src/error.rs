use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("qubit index {index} out of range for a {n_qubits}-qubit register")]
    QubitOutOfRange { index: usize, n_qubits: usize },

    #[error("two-qubit operation needs distinct qubits, got {0} twice")]
    SameQubit(usize),

    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("state is not normalized (norm {0})")]
    NotNormalized(f64),

    #[error("matrix is not unitary")]
    NotUnitary,

    #[error("invalid probability distribution: {0}")]
    InvalidProbabilities(String),

    #[error("invalid qubit count {n} for a {kind} cluster: {reason}")]
    InvalidQubitCount {
        kind: &'static str,
        n: usize,
        reason: &'static str,
    },

    #[error("the box protocol is defined for even N in 4..=12, got N = {0}")]
    UnsupportedN(usize),

    #[error("participant qubit {index} outside 2..={max}")]
    ParticipantOutOfRange { index: usize, max: usize },

    #[error("measurement outcome must be +1 or -1, got {0}")]
    InvalidOutcome(i8),

    #[error("malformed correction word `{word}`: {reason}")]
    MalformedWord { word: String, reason: &'static str },

    #[error("cannot parse `{0}`")]
    Parse(String),

    #[error("expectation value {0} lies outside [-1, 1] beyond the sampling slack")]
    ExpectationOutOfRange(f64),

    #[error("invalid density matrix: {0}")]
    InvalidDensityMatrix(String),

    #[error("invalid process matrix: {0}")]
    InvalidProcessMatrix(String),

    #[error("invalid noise channel: {0}")]
    InvalidNoise(String),

    #[error("witness term {0} is not covered by either measurement setting")]
    UncoveredTerm(String),

    #[error("witness operators are only given for N = 6; enable the generalized form for N = {0}")]
    UnsupportedWitnessSize(usize),

    #[error("fidelity {0} outside [0, 1]")]
    FidelityOutOfRange(f64),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("numerical invariant violated: {0}")]
    Invariant(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    /// Process exit code used by the command-line front end: 2 for numerical
    /// invariant violations, 1 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Invariant(_) => 2,
            _ => 1,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(Error::Invariant("x".into()).exit_code(), 2);
        assert_eq!(Error::Config("x".into()).exit_code(), 1);
        assert_eq!(Error::UnsupportedN(14).exit_code(), 1);
    }
}
