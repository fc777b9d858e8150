//! Pure states as normalized complex amplitude vectors.

use nalgebra::DVector;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use super::{bit_position, check_qubit, check_targets};
use crate::error::{Error, Result};
use crate::quantum::operator::Operator;

/// Normalization tolerance for state construction and unitary evolution.
pub const NORM_TOL: f64 = 1e-12;

/// A pure state of `n ≤ 4` qubits: 2ⁿ complex amplitudes with Σ|aᵢ|² = 1.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    amplitudes: DVector<Complex64>,
    num_qubits: usize,
}

/// Single-qubit measurement bases used by the protocol.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeasurementBasis {
    /// {|0⟩, |1⟩}
    Computational,
    /// {|+⟩, |−⟩} with |±⟩ = (|0⟩ ± |1⟩)/√2
    Diagonal,
}

impl MeasurementBasis {
    /// The basis vector for `outcome` ∈ {0, 1} as a one-qubit state.
    pub fn vector(self, outcome: usize) -> PureState {
        use crate::quantum::kets;
        match (self, outcome) {
            (MeasurementBasis::Computational, 0) => kets::zero(),
            (MeasurementBasis::Computational, _) => kets::one(),
            (MeasurementBasis::Diagonal, 0) => kets::plus(),
            (MeasurementBasis::Diagonal, _) => kets::minus(),
        }
    }
}

impl PureState {
    /// Builds a state from amplitudes, requiring unit norm within `NORM_TOL`.
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        let state = Self::new_unnormalized(amplitudes)?;
        let deviation = (state.norm_sqr() - 1.0).abs();
        if deviation > NORM_TOL {
            return Err(Error::NotNormalized(deviation));
        }
        Ok(state)
    }

    /// Builds a state from amplitudes, rescaling to unit norm.
    pub fn normalized(amplitudes: Vec<Complex64>) -> Result<Self> {
        let mut state = Self::new_unnormalized(amplitudes)?;
        let norm = state.norm_sqr().sqrt();
        if norm < 1e-300 {
            return Err(Error::NotNormalized(1.0));
        }
        state.amplitudes /= Complex64::new(norm, 0.0);
        Ok(state)
    }

    fn new_unnormalized(amplitudes: Vec<Complex64>) -> Result<Self> {
        let dim = amplitudes.len();
        if dim == 0 || !dim.is_power_of_two() {
            return Err(Error::DimensionMismatch(format!(
                "amplitude vector length {dim} is not a power of two"
            )));
        }
        let num_qubits = dim.trailing_zeros() as usize;
        Ok(Self {
            amplitudes: DVector::from_vec(amplitudes),
            num_qubits,
        })
    }

    /// The computational basis state |index⟩ of an `num_qubits`-qubit register.
    pub fn basis_state(num_qubits: usize, index: usize) -> Self {
        let dim = 1 << num_qubits;
        assert!(
            index < dim,
            "basis index {index} out of range for {num_qubits} qubits"
        );
        let mut amplitudes = DVector::from_element(dim, Complex64::new(0.0, 0.0));
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Self {
            amplitudes,
            num_qubits,
        }
    }

    /// Haar-random pure state: normalized vector of iid complex Gaussians.
    pub fn haar_random<R: Rng + ?Sized>(num_qubits: usize, rng: &mut R) -> Self {
        let dim = 1 << num_qubits;
        let amplitudes: Vec<Complex64> = (0..dim)
            .map(|_| {
                let re: f64 = rng.sample(StandardNormal);
                let im: f64 = rng.sample(StandardNormal);
                Complex64::new(re, im)
            })
            .collect();
        Self::normalized(amplitudes).expect("gaussian vector is almost surely nonzero")
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitude(&self, index: usize) -> Complex64 {
        self.amplitudes[index]
    }

    pub fn amplitudes(&self) -> &DVector<Complex64> {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    /// ⟨self|other⟩
    pub fn inner(&self, other: &PureState) -> Complex64 {
        self.amplitudes
            .iter()
            .zip(other.amplitudes.iter())
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// Tensor product; `self` occupies the higher-significance qubits.
    pub fn tensor(&self, other: &PureState) -> PureState {
        PureState {
            amplitudes: self.amplitudes.kronecker(&other.amplitudes),
            num_qubits: self.num_qubits + other.num_qubits,
        }
    }

    /// Applies `op` to the ordered `targets` (1-based qubit indices, qubit 1
    /// most significant). Non-target qubits are unaffected.
    pub fn apply(&self, op: &Operator, targets: &[usize]) -> Result<PureState> {
        let out = self.apply_matrix(op.matrix(), targets)?;
        debug_assert!(
            !op.is_unitary() || (out.norm_sqr() - 1.0).abs() < NORM_TOL,
            "unitary application must preserve the norm"
        );
        Ok(out)
    }

    /// Raw matrix application without unitarity bookkeeping; used for
    /// projectors. The result is generally unnormalized.
    pub(crate) fn apply_matrix(
        &self,
        matrix: &nalgebra::DMatrix<Complex64>,
        targets: &[usize],
    ) -> Result<PureState> {
        check_targets(self.num_qubits, targets)?;
        let k = targets.len();
        if matrix.nrows() != (1 << k) || matrix.ncols() != (1 << k) {
            return Err(Error::DimensionMismatch(format!(
                "operator is {}×{} but {} target(s) require {}×{}",
                matrix.nrows(),
                matrix.ncols(),
                k,
                1 << k,
                1 << k
            )));
        }
        let dim = self.dim();
        let positions: Vec<usize> = targets
            .iter()
            .map(|&q| bit_position(self.num_qubits, q))
            .collect();
        let mut out = DVector::from_element(dim, Complex64::new(0.0, 0.0));
        for i in 0..dim {
            // Local row index: targets[0] is the most significant local bit.
            let mut row = 0usize;
            for &p in &positions {
                row = (row << 1) | ((i >> p) & 1);
            }
            let mut acc = Complex64::new(0.0, 0.0);
            for col in 0..(1 << k) {
                let mut j = i;
                for (t, &p) in positions.iter().enumerate() {
                    let bit = (col >> (k - 1 - t)) & 1;
                    j = (j & !(1 << p)) | (bit << p);
                }
                acc += matrix[(row, col)] * self.amplitudes[j];
            }
            out[i] = acc;
        }
        Ok(PureState {
            amplitudes: out,
            num_qubits: self.num_qubits,
        })
    }

    /// Probabilities of the two outcomes of measuring `qubit` in `basis`.
    pub fn branch_probabilities(&self, qubit: usize, basis: MeasurementBasis) -> Result<[f64; 2]> {
        check_qubit(self.num_qubits, qubit)?;
        let p0 = self.branch_unnormalized(qubit, basis, 0)?.norm_sqr();
        let p1 = self.branch_unnormalized(qubit, basis, 1)?.norm_sqr();
        Ok([p0, p1])
    }

    /// Projects `qubit` onto the basis vector of `outcome`, returning the
    /// branch probability and the normalized collapsed state.
    ///
    /// Errors if the requested branch has probability below 1e-14.
    pub fn measure_branch(
        &self,
        qubit: usize,
        basis: MeasurementBasis,
        outcome: usize,
    ) -> Result<(f64, PureState)> {
        check_qubit(self.num_qubits, qubit)?;
        let branch = self.branch_unnormalized(qubit, basis, outcome)?;
        let prob = branch.norm_sqr();
        if prob < 1e-14 {
            return Err(Error::ImpossibleOutcome(prob));
        }
        let collapsed = PureState {
            amplitudes: branch.amplitudes / Complex64::new(prob.sqrt(), 0.0),
            num_qubits: self.num_qubits,
        };
        Ok((prob, collapsed))
    }

    /// Samples one measurement outcome with the given generator.
    pub fn measure_sample<R: Rng + ?Sized>(
        &self,
        qubit: usize,
        basis: MeasurementBasis,
        rng: &mut R,
    ) -> Result<(usize, f64, PureState)> {
        let probs = self.branch_probabilities(qubit, basis)?;
        let outcome = usize::from(rng.gen::<f64>() >= probs[0]);
        let (prob, collapsed) = self.measure_branch(qubit, basis, outcome)?;
        Ok((outcome, prob, collapsed))
    }

    fn branch_unnormalized(
        &self,
        qubit: usize,
        basis: MeasurementBasis,
        outcome: usize,
    ) -> Result<PureState> {
        let v = basis.vector(outcome);
        let projector = v.amplitudes() * v.amplitudes().adjoint();
        self.apply_matrix(&projector, &[qubit])
    }
}
