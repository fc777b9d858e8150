//! Hermitian eigendecomposition by cyclic Jacobi rotations.
//!
//! The matrices here are small (4×4 and 16×16), and Jacobi is the
//! dependable choice at that size: unconditionally stable, quadratically
//! convergent, and immune to the eigenvalue/eigenvector mispairing that
//! general-purpose tridiagonal solvers can exhibit on nearly diagonal
//! inputs with clustered eigenvalues.

use nalgebra::DMatrix;
use num_complex::Complex64;

/// Eigenvalues (ascending) and a unitary whose columns are the matching
/// eigenvectors of a Hermitian matrix.
pub fn hermitian_eigen(matrix: &DMatrix<Complex64>) -> (Vec<f64>, DMatrix<Complex64>) {
    let n = matrix.nrows();
    assert_eq!(n, matrix.ncols(), "matrix must be square");
    let mut a = matrix.clone();
    let mut vectors = DMatrix::<Complex64>::identity(n, n);
    let scale = matrix.norm().max(1.0);

    for _sweep in 0..60 {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in (p + 1)..n {
                off += a[(p, q)].norm_sqr();
            }
        }
        if off.sqrt() <= 1e-15 * scale {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                let r = apq.norm();
                if r <= 1e-18 * scale {
                    continue;
                }
                // Absorb the phase so the 2×2 block is real symmetric,
                // then rotate to zero the off-diagonal entry.
                let phase = apq / Complex64::new(r, 0.0);
                let alpha = a[(p, p)].re;
                let beta = a[(q, q)].re;
                let tau = (beta - alpha) / (2.0 * r);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;

                let cc = Complex64::new(c, 0.0);
                let s_conj_phase = phase.conj() * Complex64::new(s, 0.0);
                let c_conj_phase = phase.conj() * Complex64::new(c, 0.0);
                // A ← A·J with J = [[c, s], [−s·e^{−iφ}, c·e^{−iφ}]] on (p,q)
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = cc * akp - s_conj_phase * akq;
                    a[(k, q)] = Complex64::new(s, 0.0) * akp + c_conj_phase * akq;
                }
                // A ← J†·A
                let s_phase = phase * Complex64::new(s, 0.0);
                let c_phase = phase * Complex64::new(c, 0.0);
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = cc * apk - s_phase * aqk;
                    a[(q, k)] = Complex64::new(s, 0.0) * apk + c_phase * aqk;
                }
                // V ← V·J
                for k in 0..n {
                    let vkp = vectors[(k, p)];
                    let vkq = vectors[(k, q)];
                    vectors[(k, p)] = cc * vkp - s_conj_phase * vkq;
                    vectors[(k, q)] = Complex64::new(s, 0.0) * vkp + c_conj_phase * vkq;
                }
                // Enforce exact Hermitian structure on the touched entries.
                a[(p, q)] = Complex64::new(0.0, 0.0);
                a[(q, p)] = Complex64::new(0.0, 0.0);
                a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
                a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.partial_cmp(&a[(j, j)].re).unwrap());
    let values: Vec<f64> = order.iter().map(|&i| a[(i, i)].re).collect();
    let mut sorted_vectors = DMatrix::<Complex64>::zeros(n, n);
    for (new, &old) in order.iter().enumerate() {
        sorted_vectors.set_column(new, &vectors.column(old).into_owned());
    }
    (values, sorted_vectors)
}

/// Eigenvalues of a Hermitian matrix, ascending.
pub fn hermitian_eigenvalues(matrix: &DMatrix<Complex64>) -> Vec<f64> {
    hermitian_eigen(matrix).0
}

/// Eigenvalues of a 2×2 Hermitian matrix in closed form, ascending.
pub fn hermitian_eigenvalues_2x2(a: f64, b: Complex64, d: f64) -> [f64; 2] {
    let mean = 0.5 * (a + d);
    let radius = (0.25 * (a - d) * (a - d) + b.norm_sqr()).sqrt();
    [mean - radius, mean + radius]
}
