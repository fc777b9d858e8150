//! State overlap measures.

use crate::quantum::{DensityMatrix, PureState};

/// F_s = ⟨ψ|ρ|ψ⟩, the overlap of a state with a pure target.
pub fn state_fidelity(rho: &DensityMatrix, target: &PureState) -> f64 {
    assert_eq!(
        rho.dim(),
        target.dim(),
        "state and target dimensions must match"
    );
    rho.matrix_element(target).re
}

/// |⟨φ|ψ⟩|², the pure-state special case computed along an independent path.
pub fn pure_fidelity(a: &PureState, b: &PureState) -> f64 {
    a.inner(b).norm_sqr()
}

/// Trace distance ½‖A − B‖₁ between two density matrices.
pub fn trace_distance(a: &DensityMatrix, b: &DensityMatrix) -> f64 {
    let diff = DensityMatrix::from_matrix_unchecked(a.elements() - b.elements());
    0.5 * diff.eigenvalues().iter().map(|v| v.abs()).sum::<f64>()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;

    #[test]
    fn pure_state_against_itself_has_unit_fidelity() {
        let mut rng = ChaCha12Rng::seed_from_u64(41);
        let psi = PureState::haar_random(2, &mut rng);
        let f = state_fidelity(&DensityMatrix::from_pure(&psi), &psi);
        assert!((f - 1.0).abs() < 1e-12);
    }

    #[test]
    fn maximally_mixed_against_any_pure_state_is_quarter() {
        let mut rng = ChaCha12Rng::seed_from_u64(43);
        let rho = DensityMatrix::maximally_mixed(2);
        for _ in 0..10 {
            let psi = PureState::haar_random(2, &mut rng);
            assert!((state_fidelity(&rho, &psi) - 0.25).abs() < 1e-12);
        }
    }

    #[test]
    fn both_fidelity_routes_agree_on_pure_states() {
        let mut rng = ChaCha12Rng::seed_from_u64(47);
        for _ in 0..50 {
            let psi = PureState::haar_random(2, &mut rng);
            let phi = PureState::haar_random(2, &mut rng);
            let via_rho = state_fidelity(&DensityMatrix::from_pure(&psi), &phi);
            let via_overlap = pure_fidelity(&phi, &psi);
            assert!((via_rho - via_overlap).abs() < 1e-12);
        }
    }

    #[test]
    fn trace_distance_of_orthogonal_pure_states_is_one() {
        let a = DensityMatrix::from_pure(&PureState::basis_state(1, 0));
        let b = DensityMatrix::from_pure(&PureState::basis_state(1, 1));
        assert!((trace_distance(&a, &b) - 1.0).abs() < 1e-12);
        assert!(trace_distance(&a, &a) < 1e-12);
    }
}
