//! Density matrices: Hermitian, unit-trace, positive within tolerance.

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::state::MeasurementBasis;
use super::{bit_position, check_qubit, check_targets};
use crate::error::{Error, Result};
use crate::quantum::{Operator, PureState};

pub const HERMITICITY_TOL: f64 = 1e-10;
pub const TRACE_TOL: f64 = 1e-10;
/// Raw reconstructions may dip slightly negative before projection.
pub const EIGENVALUE_TOL: f64 = -1e-8;

#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    elements: DMatrix<Complex64>,
    num_qubits: usize,
}

impl DensityMatrix {
    /// Validates Hermiticity (1e-10), unit trace (1e-10) and eigenvalue
    /// floor (≥ −1e-8) before wrapping the matrix.
    pub fn new(elements: DMatrix<Complex64>) -> Result<Self> {
        let (r, c) = elements.shape();
        if r != c || r == 0 || !r.is_power_of_two() {
            return Err(Error::DimensionMismatch(format!(
                "density matrix must be square with power-of-two dimension, got {r}×{c}"
            )));
        }
        let dm = Self {
            num_qubits: r.trailing_zeros() as usize,
            elements,
        };
        let (herm, trace, min_eig) = dm.physicality();
        if herm > HERMITICITY_TOL {
            return Err(Error::NotPhysical(format!(
                "Hermiticity deviation {herm:.3e}"
            )));
        }
        if trace > TRACE_TOL {
            return Err(Error::NotPhysical(format!("trace deviation {trace:.3e}")));
        }
        if min_eig < EIGENVALUE_TOL {
            return Err(Error::NotPhysical(format!(
                "minimum eigenvalue {min_eig:.3e}"
            )));
        }
        Ok(dm)
    }

    pub(crate) fn from_matrix_unchecked(elements: DMatrix<Complex64>) -> Self {
        let num_qubits = elements.nrows().trailing_zeros() as usize;
        Self {
            elements,
            num_qubits,
        }
    }

    pub fn from_pure(state: &PureState) -> Self {
        let v = state.amplitudes();
        Self {
            elements: v * v.adjoint(),
            num_qubits: state.num_qubits(),
        }
    }

    pub fn maximally_mixed(num_qubits: usize) -> Self {
        let dim = 1 << num_qubits;
        let scale = Complex64::new(1.0 / dim as f64, 0.0);
        Self {
            elements: DMatrix::identity(dim, dim).map(|e: Complex64| e * scale),
            num_qubits,
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn dim(&self) -> usize {
        self.elements.nrows()
    }

    pub fn elements(&self) -> &DMatrix<Complex64> {
        &self.elements
    }

    pub fn element(&self, row: usize, col: usize) -> Complex64 {
        self.elements[(row, col)]
    }

    pub fn trace(&self) -> Complex64 {
        self.elements.trace()
    }

    /// (Hermiticity deviation, trace deviation, minimum eigenvalue).
    pub fn physicality(&self) -> (f64, f64, f64) {
        let herm = (&self.elements - self.elements.adjoint()).norm();
        let trace = (self.elements.trace() - Complex64::new(1.0, 0.0)).norm();
        let min_eig = self.eigenvalues().into_iter().fold(f64::INFINITY, f64::min);
        (herm, trace, min_eig)
    }

    /// Real eigenvalues of the (Hermitian) matrix, ascending.
    pub fn eigenvalues(&self) -> Vec<f64> {
        super::eigen::hermitian_eigenvalues(&self.elements)
    }

    pub fn purity(&self) -> f64 {
        (&self.elements * &self.elements).trace().re
    }

    /// Tr[ρ M]
    pub fn expectation(&self, m: &DMatrix<Complex64>) -> Complex64 {
        super::trace_product(m, &self.elements)
    }

    /// ⟨ψ|ρ|ψ⟩ for a pure probe state of matching dimension.
    pub fn matrix_element(&self, probe: &PureState) -> Complex64 {
        let v = probe.amplitudes();
        (v.adjoint() * &self.elements * v)[(0, 0)]
    }

    /// Tensor product; `self` occupies the higher-significance qubits.
    pub fn tensor(&self, other: &DensityMatrix) -> DensityMatrix {
        DensityMatrix {
            elements: self.elements.kronecker(&other.elements),
            num_qubits: self.num_qubits + other.num_qubits,
        }
    }

    /// Conjugation U ρ U† with `op` embedded on the ordered `targets`.
    pub fn apply_unitary(&self, op: &Operator, targets: &[usize]) -> Result<DensityMatrix> {
        check_targets(self.num_qubits, targets)?;
        let full = op.embedded(self.num_qubits, targets)?;
        Ok(DensityMatrix {
            elements: &full * &self.elements * full.adjoint(),
            num_qubits: self.num_qubits,
        })
    }

    /// Traces out every qubit not listed in `keep`; `keep` is distinct and
    /// its order fixes the output qubit order.
    pub fn partial_trace(&self, keep: &[usize]) -> Result<DensityMatrix> {
        if keep.is_empty() {
            return Err(Error::InvalidArgument("keep list is empty".into()));
        }
        check_targets(self.num_qubits, keep)?;
        let traced: Vec<usize> = (1..=self.num_qubits)
            .filter(|q| !keep.contains(q))
            .collect();
        let k = keep.len();
        let m = traced.len();
        let keep_pos: Vec<usize> = keep
            .iter()
            .map(|&q| bit_position(self.num_qubits, q))
            .collect();
        let traced_pos: Vec<usize> = traced
            .iter()
            .map(|&q| bit_position(self.num_qubits, q))
            .collect();
        let compose = |kept_bits: usize, env_bits: usize| -> usize {
            let mut idx = 0usize;
            for (t, &p) in keep_pos.iter().enumerate() {
                idx |= ((kept_bits >> (k - 1 - t)) & 1) << p;
            }
            for (t, &p) in traced_pos.iter().enumerate() {
                idx |= ((env_bits >> (m - 1 - t)) & 1) << p;
            }
            idx
        };
        let out_dim = 1 << k;
        let mut out = DMatrix::from_element(out_dim, out_dim, Complex64::new(0.0, 0.0));
        for a in 0..out_dim {
            for b in 0..out_dim {
                let mut acc = Complex64::new(0.0, 0.0);
                for e in 0..(1 << m) {
                    acc += self.elements[(compose(a, e), compose(b, e))];
                }
                out[(a, b)] = acc;
            }
        }
        Ok(DensityMatrix {
            elements: out,
            num_qubits: k,
        })
    }

    /// Projects `qubit` onto the `outcome` vector of `basis`, returning the
    /// branch probability and the normalized conditional state.
    pub fn measure_branch(
        &self,
        qubit: usize,
        basis: MeasurementBasis,
        outcome: usize,
    ) -> Result<(f64, DensityMatrix)> {
        check_qubit(self.num_qubits, qubit)?;
        let v = basis.vector(outcome);
        let proj2 = v.amplitudes() * v.amplitudes().adjoint();
        let proj = Operator::new(proj2)
            .expect("2x2 projector")
            .embedded(self.num_qubits, &[qubit])?;
        let prob = self.expectation(&proj).re;
        if prob < 1e-14 {
            return Err(Error::ImpossibleOutcome(prob));
        }
        let collapsed = &proj * &self.elements * proj.adjoint();
        Ok((
            prob,
            DensityMatrix {
                elements: collapsed.map(|e| e / Complex64::new(prob, 0.0)),
                num_qubits: self.num_qubits,
            },
        ))
    }
}
