//! Process-level fidelity measures and the entanglement witness.

use crate::error::{Error, Result};
use crate::quantum::{state_fidelity, DensityMatrix, PureState};

use super::process_tomo::ChiMatrix;

/// Process fidelity F_P = Tr[χ_meas χ_ideal]: the overlap of the measured
/// process matrix with the (rank-1) matrix of the ideal gate.
pub fn process_fidelity(chi_meas: &ChiMatrix, chi_ideal: &ChiMatrix) -> f64 {
    crate::quantum::trace_product(chi_meas.elements(), chi_ideal.elements()).re
}

/// Average gate fidelity from the process fidelity: F̄ = (d·F_P + 1)/(d + 1).
pub fn average_gate_fidelity(f_p: f64, d: usize) -> Result<f64> {
    if d < 2 {
        return Err(Error::InvalidArgument(format!(
            "dimension must be at least 2, got {d}"
        )));
    }
    if !(-1e-10..=1.0 + 1e-10).contains(&f_p) {
        return Err(Error::InvalidArgument(format!(
            "process fidelity {f_p} outside [0, 1]"
        )));
    }
    Ok((d as f64 * f_p + 1.0) / (d as f64 + 1.0))
}

/// Fidelity-based entanglement witness: overlap with a maximally entangled
/// two-qubit target above 1/2 certifies entanglement.
///
/// The target's Schmidt coefficients must both be 1/√2 within 1e-10.
pub fn entanglement_witness(rho: &DensityMatrix, target: &PureState) -> Result<(f64, bool)> {
    if rho.dim() != 4 || target.dim() != 4 {
        return Err(Error::DimensionMismatch(
            "witness is defined for two-qubit states".into(),
        ));
    }
    let mut reshaped = nalgebra::DMatrix::from_element(2, 2, num_complex::Complex64::new(0.0, 0.0));
    for b1 in 0..2 {
        for b4 in 0..2 {
            reshaped[(b1, b4)] = target.amplitude((b1 << 1) | b4);
        }
    }
    let singular = nalgebra::SVD::new(reshaped, false, false).singular_values;
    let expected = std::f64::consts::FRAC_1_SQRT_2;
    if (singular[0] - expected).abs() > 1e-10 || (singular[1] - expected).abs() > 1e-10 {
        return Err(Error::NotMaximallyEntangled(singular[0], singular[1]));
    }
    let f_s = state_fidelity(rho, target);
    Ok((f_s, f_s > 0.5))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::{kets, Operator};
    use crate::tomography::process_tomo::{chi_depolarizing, chi_ideal_cnot, chi_of_unitary};
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;

    #[test]
    fn chi_against_itself_has_unit_process_fidelity() {
        let chi = chi_ideal_cnot();
        assert!((process_fidelity(&chi, &chi) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn depolarizing_overlap_with_cnot_is_one_sixteenth() {
        let f = process_fidelity(&chi_depolarizing(), &chi_ideal_cnot());
        assert!((f - 1.0 / 16.0).abs() < 1e-12);
    }

    #[test]
    fn orthogonal_unitaries_have_zero_overlap() {
        let z1 = Operator::pauli_z().tensor(&Operator::identity(1));
        let shifted = Operator::cnot().compose(&z1).unwrap();
        let f = process_fidelity(&chi_of_unitary(&shifted).unwrap(), &chi_ideal_cnot());
        assert!(f.abs() < 1e-12);
    }

    #[test]
    fn average_gate_fidelity_formula_values() {
        assert!((average_gate_fidelity(0.80, 4).unwrap() - 0.84).abs() < 1e-12);
        assert!((average_gate_fidelity(1.0, 4).unwrap() - 1.0).abs() < 1e-12);
        assert!(average_gate_fidelity(1.5, 4).is_err());
        assert!(average_gate_fidelity(0.5, 1).is_err());
    }

    #[test]
    fn formula_matches_haar_average_for_depolarized_cnot() {
        // Independent route: Haar-sample input states, push them through
        // the depolarized gate, and average the output fidelity directly.
        let mut rng = ChaCha12Rng::seed_from_u64(109);
        let cnot = Operator::cnot();
        for p in [0.0, 0.3, 0.8] {
            let f_p = (1.0 - p) + p / 16.0;
            let formula = average_gate_fidelity(f_p, 4).unwrap();
            let samples = 10_000;
            let mut acc = 0.0;
            for _ in 0..samples {
                let psi = crate::quantum::PureState::haar_random(2, &mut rng);
                let ideal = psi.apply(&cnot, &[1, 2]).unwrap();
                let rotated = DensityMatrix::from_pure(&ideal);
                // E(ρ) = (1−p)·UρU† + p·I/4
                let mixed = DensityMatrix::maximally_mixed(2);
                let f = (1.0 - p) * state_fidelity(&rotated, &ideal)
                    + p * state_fidelity(&mixed, &ideal);
                acc += f;
            }
            let monte_carlo = acc / samples as f64;
            assert!(
                (monte_carlo - formula).abs() < 0.005,
                "p = {p}: MC {monte_carlo} vs formula {formula}"
            );
        }
    }

    #[test]
    fn witness_accepts_the_entangled_target() {
        let target = kets::hr_minus_vl();
        let rho = DensityMatrix::from_pure(&target);
        let (f_s, entangled) = entanglement_witness(&rho, &target).unwrap();
        assert!((f_s - 1.0).abs() < 1e-12);
        assert!(entangled);
    }

    #[test]
    fn witness_clears_the_maximally_mixed_state() {
        let rho = DensityMatrix::maximally_mixed(2);
        let (f_s, entangled) = entanglement_witness(&rho, &kets::bell_phi_plus()).unwrap();
        assert!((f_s - 0.25).abs() < 1e-12);
        assert!(!entangled);
    }

    #[test]
    fn witness_rejects_product_targets() {
        let rho = DensityMatrix::maximally_mixed(2);
        let product = kets::h().tensor(&kets::d());
        assert!(matches!(
            entanglement_witness(&rho, &product),
            Err(Error::NotMaximallyEntangled(_, _))
        ));
    }
}
