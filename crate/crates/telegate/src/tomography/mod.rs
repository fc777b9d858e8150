//! State and process reconstruction from coincidence data.

pub mod fidelity;
pub mod pauli;
pub mod process_tomo;
pub mod psd;
pub mod state_tomo;

pub use fidelity::{average_gate_fidelity, entanglement_witness, process_fidelity};
pub use process_tomo::{
    chi_depolarizing, chi_ideal_cnot, chi_of_unitary, process_tomo, reproduction_error,
    tomo_input_labels, tomo_input_states, ChiMatrix,
};
pub use psd::project_to_physical;
pub use state_tomo::{
    forward_probabilities, linear_inversion, state_tomo, state_tomo_from_weights,
};
