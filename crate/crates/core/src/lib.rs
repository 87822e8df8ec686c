//! Quantum leading-zero and leading-one counters: circuit generation,
//! Clifford+T lowering, simulation, verification and resource analysis.

pub mod analyzer;
pub mod decompose;
pub mod error;
pub mod generators;
pub mod ir;
pub mod oracle;
pub mod sim;
pub mod vectors;

pub use error::{Error, Result};
