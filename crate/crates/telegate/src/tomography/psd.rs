//! Physicality restoration for reconstructed matrices.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Projects a raw reconstruction onto the nearest (Frobenius) unit-trace
/// positive-semidefinite matrix: Hermitize, normalize the trace, then
/// truncate negative eigenvalues and redistribute their weight uniformly
/// over the surviving ones.
pub fn project_to_physical(raw: &DMatrix<Complex64>) -> Result<DMatrix<Complex64>> {
    let herm = (raw + raw.adjoint()).map(|e| e * Complex64::new(0.5, 0.0));
    let trace = herm.trace().re;
    if trace <= 1e-12 {
        return Err(Error::NotPhysical(format!(
            "reconstruction has non-positive trace {trace:.3e}"
        )));
    }
    let herm = herm.map(|e| e / Complex64::new(trace, 0.0));
    let (ascending, vectors) = crate::quantum::eigen::hermitian_eigen(&herm);
    let d = ascending.len();

    // Descending eigenvalues; column d−1−rank holds the rank-th vector.
    let mut lambda: Vec<f64> = ascending.into_iter().rev().collect();

    // Truncate from the bottom while redistribution would push entries
    // negative, then spread the removed weight over the rest.
    let mut removed = 0.0;
    let mut keep = d;
    while keep > 0 && lambda[keep - 1] + removed / (keep as f64) < 0.0 {
        removed += lambda[keep - 1];
        lambda[keep - 1] = 0.0;
        keep -= 1;
    }
    if keep == 0 {
        return Err(Error::NotPhysical(
            "reconstruction collapsed to the zero matrix".into(),
        ));
    }
    let shift = removed / keep as f64;
    for value in lambda.iter_mut().take(keep) {
        *value += shift;
    }

    let mut out = DMatrix::from_element(d, d, Complex64::new(0.0, 0.0));
    for (rank, &value) in lambda.iter().enumerate() {
        if value == 0.0 {
            continue;
        }
        let v = vectors.column(d - 1 - rank);
        let scale = Complex64::new(value, 0.0);
        for r in 0..d {
            for c in 0..d {
                out[(r, c)] += scale * v[r] * v[c].conj();
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::{DensityMatrix, PureState};
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;

    #[test]
    fn projection_fixes_a_negative_eigenvalue() {
        // diag(1.2, -0.2): truncates to diag(1, 0)
        let mut m = DMatrix::from_element(2, 2, Complex64::new(0.0, 0.0));
        m[(0, 0)] = Complex64::new(1.2, 0.0);
        m[(1, 1)] = Complex64::new(-0.2, 0.0);
        let fixed = project_to_physical(&m).unwrap();
        assert!((fixed[(0, 0)].re - 1.0).abs() < 1e-12);
        assert!(fixed[(1, 1)].norm() < 1e-12);
        assert!((fixed.trace().re - 1.0).abs() < 1e-12);
    }

    #[test]
    fn projection_redistributes_uniformly() {
        // diag(0.7, 0.5, -0.1, -0.1): removed weight −0.2 spreads over the
        // two survivors → diag(0.6, 0.4, 0, 0).
        let mut m = DMatrix::from_element(4, 4, Complex64::new(0.0, 0.0));
        for (i, v) in [0.7, 0.5, -0.1, -0.1].into_iter().enumerate() {
            m[(i, i)] = Complex64::new(v, 0.0);
        }
        let fixed = project_to_physical(&m).unwrap();
        assert!((fixed[(0, 0)].re - 0.6).abs() < 1e-12);
        assert!((fixed[(1, 1)].re - 0.4).abs() < 1e-12);
        assert!(fixed[(2, 2)].norm() < 1e-12 && fixed[(3, 3)].norm() < 1e-12);
    }

    #[test]
    fn projection_is_idempotent_and_gentle_on_physical_input() {
        let mut rng = ChaCha12Rng::seed_from_u64(97);
        for _ in 0..20 {
            let a = DensityMatrix::from_pure(&PureState::haar_random(2, &mut rng));
            let b = DensityMatrix::from_pure(&PureState::haar_random(2, &mut rng));
            let mix =
                a.elements() * Complex64::new(0.7, 0.0) + b.elements() * Complex64::new(0.3, 0.0);
            let once = project_to_physical(&mix).unwrap();
            assert!(
                (&once - &mix).norm() < 1e-12,
                "already-physical input must not move"
            );
            let twice = project_to_physical(&once).unwrap();
            assert!(
                (&twice - &once).norm() < 1e-12,
                "projection must be idempotent"
            );
        }
    }

    #[test]
    fn projection_rejects_traceless_garbage() {
        let m = DMatrix::from_element(2, 2, Complex64::new(0.0, 0.0));
        assert!(project_to_physical(&m).is_err());
    }
}
