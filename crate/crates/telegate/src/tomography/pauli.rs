//! Pauli product operator basis.

use nalgebra::DMatrix;
use num_complex::Complex64;

/// Single-qubit Paulis in the order {I, X, Y, Z}.
pub fn single_qubit() -> [DMatrix<Complex64>; 4] {
    let o = Complex64::new(1.0, 0.0);
    let z = Complex64::new(0.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    [
        DMatrix::from_row_slice(2, 2, &[o, z, z, o]),
        DMatrix::from_row_slice(2, 2, &[z, o, o, z]),
        DMatrix::from_row_slice(2, 2, &[z, -i, i, z]),
        DMatrix::from_row_slice(2, 2, &[o, z, z, -o]),
    ]
}

/// Two-qubit Pauli products {I,X,Y,Z} ⊗ {I,X,Y,Z}; element 4·a + b is
/// σ_a ⊗ σ_b.
pub fn two_qubit() -> Vec<DMatrix<Complex64>> {
    let singles = single_qubit();
    let mut out = Vec::with_capacity(16);
    for a in &singles {
        for b in &singles {
            out.push(a.kronecker(b));
        }
    }
    out
}

/// Human-readable label of two-qubit Pauli index `m`.
pub fn label(m: usize) -> String {
    const NAMES: [char; 4] = ['I', 'X', 'Y', 'Z'];
    format!("{}{}", NAMES[(m >> 2) & 3], NAMES[m & 3])
}
