use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("qubit count mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("{0} qubits exceeds the supported maximum of {max}", max = crate::pauli::MAX_QUBITS)]
    TooManyQubits(usize),

    #[error("qubit index {index} out of range for {n_qubits} qubits")]
    QubitOutOfRange { index: usize, n_qubits: usize },

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid gate: {0}")]
    InvalidGate(String),

    #[error("gate is not Clifford: {0}")]
    NotClifford(String),

    #[error("invalid generator: {0}")]
    InvalidGenerator(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("gate {gate} spans more than one cluster")]
    CrossClusterGate { gate: String },

    #[error("operator pool: {0}")]
    Pool(String),

    #[error("{n_qubits} qubits exceeds the dense feasibility cap of {cap}")]
    FeasibilityCap { n_qubits: usize, cap: usize },

    #[error("eigensolver failed with LAPACK info {0}")]
    Eigensolver(i32),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub(crate) fn ensure_same(left: usize, right: usize) -> Result<()> {
    if left == right {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { left, right })
    }
}
