use thiserror::Error;

/// Errors produced by circuit construction, simulation and series compilation.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid gate: {0}")]
    InvalidGate(String),

    #[error("dimension mismatch: circuit acts on {circuit} qubits, state has {state}")]
    DimensionMismatch { circuit: usize, state: usize },

    #[error("dense oracle refused: {n_qubits} qubits exceeds the limit of {limit}")]
    OracleTooWide { n_qubits: usize, limit: usize },

    #[error("post-selection impossible: the kept pattern has zero probability")]
    PostSelectionImpossible,

    #[error("register error: {0}")]
    Register(String),

    #[error(
        "uniformly-controlled rotation with {controls} controls needs {expected} angles, got {got}"
    )]
    AngleCount {
        controls: usize,
        expected: usize,
        got: usize,
    },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("gearbox depth {depth} outside the supported range 1..={max}")]
    DepthOutOfRange { depth: u32, max: u32 },

    #[error("invalid input: {0}")]
    Input(String),

    #[error("normalization error: {0}")]
    Normalization(String),

    #[error("relative-phase Toffoli requested in a circuit that is not flagged magnitude-only")]
    PhaseSensitive,
}

pub type Result<T> = std::result::Result<T, Error>;
