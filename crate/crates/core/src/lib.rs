//! State-vector simulation of the HHL quantum linear-system algorithm.
//!
//! - [`linalg`]: dense complex matrices, Hermitian eigendecomposition,
//!   `exp(iAt)`, classical solves and fidelities.
//! - [`state`]: the n-qubit state vector with controlled gate application and
//!   postselection. Qubit 0 is the most significant bit of a basis index.
//! - [`gates`] and [`circuit`]: the gate catalog, circuits, inverse QFT and
//!   the dense unitary oracle.
//! - [`hhl`]: the general pipeline for any Hermitian `A` of size `2^m`.
//! - [`example2x2`]: the hardwired four-qubit circuit for `A = ½[[3,1],[1,3]]`
//!   and the `r` sweep of fidelity and success probability.

pub mod circuit;
pub mod error;
pub mod example2x2;
pub mod format;
pub mod gates;
pub mod hhl;
pub mod linalg;
pub mod state;

pub use circuit::{inverse_qft, qft, Circuit, CircuitOp};
pub use error::{Error, Result};
pub use gates::{Gate, GateKind};
pub use hhl::{run_hhl, HhlConfig, HhlResult, Inversion, LinearSystem};
pub use linalg::{ComplexMatrix, ComplexVector, EigenSystem};
pub use state::QuantumState;

pub use num_complex::Complex64;
