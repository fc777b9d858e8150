//! Dense complex linear algebra for small multi-qubit systems.
//!
//! States and operators live on registers of up to four qubits. The
//! ordering convention throughout the crate: **qubit 1 sits at the most
//! significant bit of the basis index**, matching left-to-right ket
//! notation, so |10⟩ on qubits (1,2) is basis index 2 with qubit 1 in
//! state 1. Polarization encodes as H ↔ 0, V ↔ 1; path labels |0⟩/|1⟩
//! are used verbatim.
//!
//! All types are immutable values after construction and all operations
//! are pure functions, so everything here is `Send + Sync`.

pub mod density;
pub mod eigen;
pub mod fidelity;
pub mod kets;
pub mod operator;
pub mod state;

pub use density::DensityMatrix;
pub use fidelity::{pure_fidelity, state_fidelity, trace_distance};
pub use operator::Operator;
pub use state::{MeasurementBasis, PureState};

/// Bit position (from the least significant end) of 1-based `qubit` in an
/// `n`-qubit basis index.
#[inline]
pub(crate) fn bit_position(num_qubits: usize, qubit: usize) -> usize {
    num_qubits - qubit
}

/// Value of `qubit` (1-based) in basis index `index`.
#[inline]
pub(crate) fn bit_of(index: usize, num_qubits: usize, qubit: usize) -> usize {
    (index >> bit_position(num_qubits, qubit)) & 1
}

pub(crate) fn check_qubit(num_qubits: usize, qubit: usize) -> crate::error::Result<()> {
    if qubit == 0 || qubit > num_qubits {
        return Err(crate::error::Error::InvalidQubit { qubit, num_qubits });
    }
    Ok(())
}

pub(crate) fn check_targets(num_qubits: usize, targets: &[usize]) -> crate::error::Result<()> {
    for &t in targets {
        check_qubit(num_qubits, t)?;
    }
    for (i, &t) in targets.iter().enumerate() {
        if targets[i + 1..].contains(&t) {
            return Err(crate::error::Error::DuplicateTargets);
        }
    }
    Ok(())
}

/// Tr[A·B] without forming the product.
pub(crate) fn trace_product(
    a: &nalgebra::DMatrix<num_complex::Complex64>,
    b: &nalgebra::DMatrix<num_complex::Complex64>,
) -> num_complex::Complex64 {
    debug_assert_eq!(a.ncols(), b.nrows());
    let mut acc = num_complex::Complex64::new(0.0, 0.0);
    for i in 0..a.nrows() {
        for j in 0..a.ncols() {
            acc += a[(i, j)] * b[(j, i)];
        }
    }
    acc
}
