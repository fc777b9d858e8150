//! Quantum process tomography of the teleported two-qubit gate.
//!
//! The channel is probed with the 16 product inputs {H,V,D,R}⊗{H,V,D,R};
//! each output density matrix comes from 16-setting state tomography, so
//! the full campaign consumes a 16×16 grid of coincidence measurements.
//! The χ-matrix lives in the two-qubit Pauli product basis with unit
//! trace for trace-preserving channels.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::optics::Basis;
use crate::quantum::{DensityMatrix, Operator, PureState};

use super::pauli;
use super::psd::project_to_physical;

/// Process matrix in the basis {I,X,Y,Z}⊗{I,X,Y,Z}: the channel acts as
/// E(ρ) = Σ χ_mn P_m ρ P_n.
#[derive(Debug, Clone, PartialEq)]
pub struct ChiMatrix {
    elements: DMatrix<Complex64>,
}

impl ChiMatrix {
    /// Validates Hermiticity (1e-10), unit trace (1e-10) and the
    /// post-projection eigenvalue floor.
    pub fn new(elements: DMatrix<Complex64>) -> Result<Self> {
        if elements.shape() != (16, 16) {
            return Err(Error::DimensionMismatch(format!(
                "χ must be 16×16, got {}×{}",
                elements.nrows(),
                elements.ncols()
            )));
        }
        let chi = Self { elements };
        let (herm, trace, min_eig) = chi.physicality();
        if herm > 1e-10 {
            return Err(Error::NotPhysical(format!(
                "χ Hermiticity deviation {herm:.3e}"
            )));
        }
        if trace > 1e-10 {
            return Err(Error::NotPhysical(format!("χ trace deviation {trace:.3e}")));
        }
        if min_eig < -1e-8 {
            return Err(Error::NotPhysical(format!(
                "χ minimum eigenvalue {min_eig:.3e}"
            )));
        }
        Ok(chi)
    }

    pub fn elements(&self) -> &DMatrix<Complex64> {
        &self.elements
    }

    pub fn element(&self, m: usize, n: usize) -> Complex64 {
        self.elements[(m, n)]
    }

    pub fn trace(&self) -> Complex64 {
        self.elements.trace()
    }

    /// (Hermiticity deviation, trace deviation, minimum eigenvalue).
    pub fn physicality(&self) -> (f64, f64, f64) {
        let herm = (&self.elements - self.elements.adjoint()).norm();
        let trace = (self.elements.trace() - Complex64::new(1.0, 0.0)).norm();
        let min_eig = crate::quantum::eigen::hermitian_eigenvalues(&self.elements)
            .into_iter()
            .fold(f64::INFINITY, f64::min);
        (herm, trace, min_eig)
    }

    /// Applies the channel to a state: Σ χ_mn P_m ρ P_n.
    pub fn apply(&self, rho: &DensityMatrix) -> DensityMatrix {
        let paulis = pauli::two_qubit();
        let mut out = DMatrix::from_element(4, 4, Complex64::new(0.0, 0.0));
        for m in 0..16 {
            for n in 0..16 {
                let coeff = self.elements[(m, n)];
                if coeff.norm() < 1e-300 {
                    continue;
                }
                out += &paulis[m] * rho.elements() * &paulis[n] * coeff;
            }
        }
        DensityMatrix::from_matrix_unchecked(out)
    }
}

/// The 16 tomography input labels (qubit 1, qubit 4), row-major over
/// {H,V,D,R}: HH, HV, HD, HR, VH, …, RR.
pub fn tomo_input_labels() -> [(Basis, Basis); 16] {
    let mut out = [(Basis::H, Basis::H); 16];
    for (i, &b1) in Basis::TOMOGRAPHY.iter().enumerate() {
        for (j, &b4) in Basis::TOMOGRAPHY.iter().enumerate() {
            out[i * 4 + j] = (b1, b4);
        }
    }
    out
}

/// The 16 tomography input states in [`tomo_input_labels`] order.
pub fn tomo_input_states() -> Vec<PureState> {
    tomo_input_labels()
        .into_iter()
        .map(|(b1, b4)| b1.state().tensor(&b4.state()))
        .collect()
}

/// χ of a two-qubit unitary: rank-1 with χ = c c†, c_m = Tr[P_m U]/4.
pub fn chi_of_unitary(u: &Operator) -> Result<ChiMatrix> {
    if u.dim() != 4 {
        return Err(Error::DimensionMismatch(
            "process matrices are defined for two-qubit gates".into(),
        ));
    }
    let paulis = pauli::two_qubit();
    let c: Vec<Complex64> = paulis
        .iter()
        .map(|p| (p.adjoint() * u.matrix()).trace() / Complex64::new(4.0, 0.0))
        .collect();
    let cv = DVector::from_vec(c);
    ChiMatrix::new(&cv * cv.adjoint())
}

/// χ of the ideal CNOT.
pub fn chi_ideal_cnot() -> ChiMatrix {
    chi_of_unitary(&Operator::cnot()).expect("CNOT is a two-qubit unitary")
}

/// χ of the completely depolarizing channel: uniform Pauli mixture I/16.
pub fn chi_depolarizing() -> ChiMatrix {
    let m =
        DMatrix::<Complex64>::identity(16, 16).map(|e: Complex64| e / Complex64::new(16.0, 0.0));
    ChiMatrix::new(m).expect("uniform χ is physical")
}

/// Reconstructs χ from the 16 measured output states, ordered as
/// [`tomo_input_labels`]. Linear inversion over the input-state basis via
/// the channel's Choi matrix, then PSD projection.
pub fn process_tomo(outputs: &[DensityMatrix]) -> Result<ChiMatrix> {
    if outputs.len() != 16 {
        return Err(Error::InvalidArgument(format!(
            "process tomography needs 16 outputs, got {}",
            outputs.len()
        )));
    }
    for (k, rho) in outputs.iter().enumerate() {
        if rho.dim() != 4 {
            return Err(Error::DimensionMismatch(format!(
                "output {k} is not a two-qubit state"
            )));
        }
        let (herm, trace, min_eig) = rho.physicality();
        if herm > 1e-8 || trace > 1e-8 || min_eig < -1e-8 {
            return Err(Error::NotPhysical(format!(
                "output {k} fails physicality (herm {herm:.2e}, trace dev {trace:.2e}, min eig {min_eig:.2e})"
            )));
        }
    }
    let inputs = tomo_input_states();

    // Decompose each elementary |i⟩⟨j| over the input projectors, then
    // assemble the Choi matrix J = Σ_ij E(|i⟩⟨j|) ⊗ |i⟩⟨j| by linearity.
    let vec_of = |m: &DMatrix<Complex64>| -> DVector<Complex64> {
        DVector::from_iterator(
            16,
            (0..4)
                .flat_map(|r| (0..4).map(move |c| (r, c)))
                .map(|(r, c)| m[(r, c)]),
        )
    };
    let mut basis_matrix = DMatrix::from_element(16, 16, Complex64::new(0.0, 0.0));
    for (k, input) in inputs.iter().enumerate() {
        let rho_in = DensityMatrix::from_pure(input);
        basis_matrix.set_column(k, &vec_of(rho_in.elements()));
    }
    let lu = basis_matrix.lu();

    let mut choi = DMatrix::from_element(16, 16, Complex64::new(0.0, 0.0));
    for i in 0..4 {
        for j in 0..4 {
            let mut elementary = DMatrix::from_element(4, 4, Complex64::new(0.0, 0.0));
            elementary[(i, j)] = Complex64::new(1.0, 0.0);
            let gamma = lu
                .solve(&vec_of(&elementary))
                .ok_or_else(|| Error::NotPhysical("input states do not span".into()))?;
            // E(|i⟩⟨j|) = Σ_k γ_k · output_k
            let mut mapped = DMatrix::from_element(4, 4, Complex64::new(0.0, 0.0));
            for (k, out) in outputs.iter().enumerate() {
                mapped += out.elements().map(|e| e * gamma[k]);
            }
            for r in 0..4 {
                for c in 0..4 {
                    choi[(4 * r + i, 4 * c + j)] += mapped[(r, c)];
                }
            }
        }
    }

    // χ_mn = ⟨v_m|J|v_n⟩ / d² with v_m = (P_m ⊗ I)|Ω̃⟩, |Ω̃⟩ = Σ_i |ii⟩.
    let paulis = pauli::two_qubit();
    let v: Vec<DVector<Complex64>> = paulis
        .iter()
        .map(|p| {
            let mut vm = DVector::from_element(16, Complex64::new(0.0, 0.0));
            for r in 0..4 {
                for i in 0..4 {
                    vm[4 * r + i] = p[(r, i)];
                }
            }
            vm
        })
        .collect();
    let mut chi_raw = DMatrix::from_element(16, 16, Complex64::new(0.0, 0.0));
    for m in 0..16 {
        for n in 0..16 {
            chi_raw[(m, n)] = (v[m].adjoint() * &choi * &v[n])[(0, 0)] / Complex64::new(16.0, 0.0);
        }
    }
    ChiMatrix::new(project_to_physical(&chi_raw)?)
}

/// Worst-case reproduction error of a reconstructed channel: the maximum
/// trace distance between predicted and measured outputs over the inputs.
pub fn reproduction_error(chi: &ChiMatrix, outputs: &[DensityMatrix]) -> f64 {
    tomo_input_states()
        .iter()
        .zip(outputs.iter())
        .map(|(input, measured)| {
            let predicted = chi.apply(&DensityMatrix::from_pure(input));
            crate::quantum::trace_distance(&predicted, measured)
        })
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::state_fidelity;

    fn cnot_outputs() -> Vec<DensityMatrix> {
        tomo_input_states()
            .iter()
            .map(|input| {
                DensityMatrix::from_pure(&input.apply(&Operator::cnot(), &[1, 2]).unwrap())
            })
            .collect()
    }

    #[test]
    fn ideal_cnot_outputs_reconstruct_a_unit_fidelity_chi() {
        let chi = process_tomo(&cnot_outputs()).unwrap();
        let ideal = chi_ideal_cnot();
        let f_p = super::super::fidelity::process_fidelity(&chi, &ideal);
        assert!((f_p - 1.0).abs() < 1e-9, "F_P = {f_p}");
        assert!(reproduction_error(&chi, &cnot_outputs()) < 1e-8);
    }

    #[test]
    fn identity_channel_concentrates_on_the_ii_component() {
        let outputs: Vec<DensityMatrix> = tomo_input_states()
            .iter()
            .map(DensityMatrix::from_pure)
            .collect();
        let chi = process_tomo(&outputs).unwrap();
        assert!((chi.element(0, 0).re - 1.0).abs() < 1e-9);
        let off_mass: f64 = (0..16)
            .flat_map(|m| (0..16).map(move |n| (m, n)))
            .filter(|&(m, n)| (m, n) != (0, 0))
            .map(|(m, n)| chi.element(m, n).norm())
            .sum();
        assert!(off_mass < 1e-8);
    }

    #[test]
    fn cnot_chi_has_the_four_expected_components() {
        // CNOT = (II + IX + ZI − ZX)/2 → |c|² = 1/4 on those four entries.
        let chi = chi_ideal_cnot();
        for (m, expected) in (0..16).map(|m| {
            let e = match pauli::label(m).as_str() {
                "II" | "IX" | "ZI" | "ZX" => 0.25,
                _ => 0.0,
            };
            (m, e)
        }) {
            assert!(
                (chi.element(m, m).re - expected).abs() < 1e-12,
                "diagonal {} should be {expected}",
                pauli::label(m)
            );
        }
        assert!(
            (chi.element(0, 13).re + 0.25).abs() < 1e-12,
            "II–ZX coherence is −1/4"
        );
    }

    #[test]
    fn depolarizing_chi_applies_as_white_noise() {
        let chi = chi_depolarizing();
        let rho = DensityMatrix::from_pure(&tomo_input_states()[5]);
        let out = chi.apply(&rho);
        assert!((out.elements() - DensityMatrix::maximally_mixed(2).elements()).norm() < 1e-12);
    }

    #[test]
    fn chi_application_reproduces_the_gate_on_fresh_states() {
        use rand::SeedableRng;
        let chi = process_tomo(&cnot_outputs()).unwrap();
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(107);
        for _ in 0..10 {
            let psi = PureState::haar_random(2, &mut rng);
            let expected = psi.apply(&Operator::cnot(), &[1, 2]).unwrap();
            let out = chi.apply(&DensityMatrix::from_pure(&psi));
            assert!((state_fidelity(&out, &expected) - 1.0).abs() < 1e-8);
        }
    }

    #[test]
    fn process_tomo_rejects_bad_inputs() {
        assert!(process_tomo(&[]).is_err());
        let mut outputs = cnot_outputs();
        outputs[3] = DensityMatrix::maximally_mixed(1);
        assert!(process_tomo(&outputs).is_err());
    }
}
