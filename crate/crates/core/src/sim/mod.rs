//! Bit-level simulation of macro circuits, statevector validation of
//! expansions, and verification sweeps.

mod basis;
pub mod statevector;
mod verify;

pub use basis::{run_basis, run_lanes, ContractViolation, LaneState, SimEvidence, SimOutcome, LANES};
pub use verify::{
    exhaustive_verify, exhaustive_verify_circuit, expected_count, sample_inputs, sampled_verify,
    sampled_verify_circuit, Counterexample, Execution, Method, VerificationReport, DEFAULT_SEED, MAX_EXHAUSTIVE_WIDTH,
};
