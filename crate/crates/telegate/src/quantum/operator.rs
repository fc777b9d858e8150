//! Matrix operators on small registers, with a unitarity flag fixed at
//! construction.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

const UNITARY_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct Operator {
    matrix: DMatrix<Complex64>,
    unitary: bool,
}

impl Operator {
    /// Wraps a square matrix on a whole number of qubits; the unitarity
    /// flag is set by checking U†U = I within 1e-10.
    pub fn new(matrix: DMatrix<Complex64>) -> Result<Self> {
        let (r, c) = matrix.shape();
        if r != c || r == 0 || !r.is_power_of_two() {
            return Err(Error::DimensionMismatch(format!(
                "operator must be square with power-of-two dimension, got {r}×{c}"
            )));
        }
        let gram = matrix.adjoint() * &matrix;
        let id = DMatrix::<Complex64>::identity(r, r);
        let unitary = (gram - id).norm() < UNITARY_TOL;
        Ok(Self { matrix, unitary })
    }

    pub fn from_rows(dim: usize, entries: &[Complex64]) -> Result<Self> {
        Self::new(DMatrix::from_row_slice(dim, dim, entries))
    }

    pub fn identity(num_qubits: usize) -> Self {
        let dim = 1 << num_qubits;
        Self {
            matrix: DMatrix::identity(dim, dim),
            unitary: true,
        }
    }

    pub fn pauli_x() -> Self {
        let o = Complex64::new(1.0, 0.0);
        let z = Complex64::new(0.0, 0.0);
        Self::from_rows(2, &[z, o, o, z]).unwrap()
    }

    pub fn pauli_y() -> Self {
        let i = Complex64::new(0.0, 1.0);
        let z = Complex64::new(0.0, 0.0);
        Self::from_rows(2, &[z, -i, i, z]).unwrap()
    }

    pub fn pauli_z() -> Self {
        let o = Complex64::new(1.0, 0.0);
        let z = Complex64::new(0.0, 0.0);
        Self::from_rows(2, &[o, z, z, -o]).unwrap()
    }

    pub fn hadamard() -> Self {
        let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        Self::from_rows(2, &[h, h, h, -h]).unwrap()
    }

    /// Two-qubit CNOT; the first (more significant) qubit controls, the
    /// second is the target.
    pub fn cnot() -> Self {
        let o = Complex64::new(1.0, 0.0);
        let z = Complex64::new(0.0, 0.0);
        Self::from_rows(
            4,
            &[
                o, z, z, z, //
                z, o, z, z, //
                z, z, z, o, //
                z, z, o, z,
            ],
        )
        .unwrap()
    }

    pub fn num_qubits(&self) -> usize {
        self.matrix.nrows().trailing_zeros() as usize
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn is_unitary(&self) -> bool {
        self.unitary
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    /// Tensor product; `self` occupies the higher-significance qubits.
    pub fn tensor(&self, other: &Operator) -> Operator {
        Operator {
            matrix: self.matrix.kronecker(&other.matrix),
            unitary: self.unitary && other.unitary,
        }
    }

    pub fn adjoint(&self) -> Operator {
        Operator {
            matrix: self.matrix.adjoint(),
            unitary: self.unitary,
        }
    }

    /// Matrix product `self · other` (other acts first).
    pub fn compose(&self, other: &Operator) -> Result<Operator> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch(format!(
                "cannot compose {}×{} with {}×{}",
                self.dim(),
                self.dim(),
                other.dim(),
                other.dim()
            )));
        }
        Ok(Operator {
            matrix: &self.matrix * &other.matrix,
            unitary: self.unitary && other.unitary,
        })
    }

    /// Scalar multiple; a unimodular scalar keeps the unitarity flag.
    pub fn scaled(&self, factor: Complex64) -> Operator {
        Operator {
            matrix: self.matrix.map(|e| e * factor),
            unitary: self.unitary && (factor.norm() - 1.0).abs() < UNITARY_TOL,
        }
    }

    /// Expands the operator to a full `num_qubits`-register matrix acting on
    /// the ordered `targets` and as identity elsewhere.
    pub fn embedded(&self, num_qubits: usize, targets: &[usize]) -> Result<DMatrix<Complex64>> {
        super::check_targets(num_qubits, targets)?;
        let k = targets.len();
        if self.dim() != (1 << k) {
            return Err(Error::DimensionMismatch(format!(
                "operator on {} qubit(s) does not fit {} target(s)",
                self.num_qubits(),
                k
            )));
        }
        let dim = 1 << num_qubits;
        let positions: Vec<usize> = targets
            .iter()
            .map(|&q| super::bit_position(num_qubits, q))
            .collect();
        let rest_mask: usize = {
            let mut m = dim - 1;
            for &p in &positions {
                m &= !(1 << p);
            }
            m
        };
        let mut full = DMatrix::from_element(dim, dim, Complex64::new(0.0, 0.0));
        for i in 0..dim {
            let mut row = 0usize;
            for &p in &positions {
                row = (row << 1) | ((i >> p) & 1);
            }
            for col in 0..(1 << k) {
                let mut j = i & rest_mask;
                for (t, &p) in positions.iter().enumerate() {
                    let bit = (col >> (k - 1 - t)) & 1;
                    j |= bit << p;
                }
                full[(i, j)] = self.matrix[(row, col)];
            }
        }
        Ok(full)
    }
}
