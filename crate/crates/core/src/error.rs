use crate::ir::{GateKind, QubitId};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid width {0}: a counter needs at least one input qubit")]
    InvalidWidth(usize),

    #[error("malformed {kind} gate: {reason}")]
    MalformedGate { kind: GateKind, reason: String },

    #[error("qubit {0} is not registered in the circuit")]
    UnregisteredQubit(QubitId),

    #[error("classical bit k{0} is not declared in the circuit")]
    UnregisteredBit(u32),

    #[error("ancilla allocation error: {0}")]
    Allocation(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("shape error: {0}")]
    Shape(String),

    #[error("variant mismatch: {0}")]
    VariantMismatch(String),

    #[error("{kind} gates cannot be handled at the {level} level")]
    WrongLevel { kind: GateKind, level: &'static str },

    #[error("statevector capacity exceeded: {0} qubits requested, at most 12 supported")]
    Capacity(usize),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("insufficient simulation evidence: {0}")]
    Evidence(String),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse { line, message: message.into() }
    }
}
