//! Simulation of teleporting a CNOT gate across two photonic qubits.
//!
//! The crate models the full chain: the algebraic teleportation identity,
//! a linear-optics apparatus that realizes it on polarization/path qubits
//! with calibrated imperfections, Monte-Carlo coincidence counting, and
//! state/process tomography of the teleported gate.
//!
//! Modules:
//! - [`quantum`] — dense states, operators and density matrices (n ≤ 4).
//! - [`protocol`] — the gate-teleportation procedure and its verification.
//! - [`optics`] — wave plates, beam splitters, noise and detector counts.
//! - [`tomography`] — state/process reconstruction and fidelity measures.
//! - [`run`] — configs, campaign orchestration and report files for the
//!   `telegate` binary and the examples.

pub mod error;
pub mod optics;
pub mod protocol;
pub mod quantum;
pub mod run;
pub mod tomography;

pub use error::{Error, Result};
