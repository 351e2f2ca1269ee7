//! Dense state-vector simulation, a dense-matrix oracle for small circuits,
//! and post-selected / shot-based readout.
//!
//! Basis indices are little-endian: qubit 0 is the least-significant bit.

mod measure;
mod oracle;
mod state;

pub use measure::{
    marginal_one, post_select, post_select_shots, sample_shots, sample_shots_with,
    PostSelectionResult, ShotRecord, IMPOSSIBLE_MASS,
};
pub use oracle::{dense_oracle, max_deviation_up_to_phase, DenseMatrix, ORACLE_MAX_QUBITS};
pub use state::{apply_gate, run_circuit, StateVector};
