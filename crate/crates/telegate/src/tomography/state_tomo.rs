//! Two-qubit state tomography from 16 analyzer settings.
//!
//! The minimal scheme: one projective count per setting over the grid
//! {H,V,D,R} ⊗ {H,V,D,R}. Linear inversion expands ρ over the Pauli
//! product basis, with the unknown pair flux absorbed into the trace
//! normalization, followed by projection to the nearest physical matrix.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::optics::{tomography_settings, CoincidenceTable, DetectorPair};
use crate::quantum::DensityMatrix;

use super::pauli;
use super::psd::project_to_physical;

/// Reconstructs the conditional output state from the 16-setting counts of
/// one detector pair.
pub fn state_tomo(table: &CoincidenceTable, pair: DetectorPair) -> Result<DensityMatrix> {
    let row_count = table
        .rows
        .iter()
        .filter(|r| r.detector_pair == pair)
        .count();
    let counts = table.counts_for_pair(pair);
    if counts.len() != row_count {
        return Err(Error::InvalidArgument(format!(
            "duplicate analyzer settings for {pair}"
        )));
    }
    let mut weights = [0.0f64; 16];
    let mut missing = Vec::new();
    for (i, setting) in tomography_settings().into_iter().enumerate() {
        match counts.get(&(setting.q1, setting.q4)) {
            Some(&count) => weights[i] = count as f64,
            None => missing.push(format!("{}{}", setting.q1, setting.q4)),
        }
    }
    if !missing.is_empty() {
        return Err(Error::MissingSettings(format!(
            "{pair} lacks settings {}",
            missing.join(", ")
        )));
    }
    if weights.iter().sum::<f64>() <= 0.0 {
        return Err(Error::EmptyCounts);
    }
    state_tomo_from_weights(&weights)
}

/// Linear-inversion reconstruction from per-setting weights (counts or
/// exact probabilities) in [`tomography_settings`] order, followed by
/// physicality projection and maximum-likelihood refinement.
pub fn state_tomo_from_weights(weights: &[f64; 16]) -> Result<DensityMatrix> {
    let raw = linear_inversion(weights)?;
    let projected = project_to_physical(&raw)?;
    let refined = mle_refine(&projected, weights);
    Ok(DensityMatrix::from_matrix_unchecked(refined))
}

/// Poisson log-likelihood of `rho` given the setting weights, with the
/// pair flux profiled out: Σ n_ν ln q_ν − (Σ n) ln (Σ q).
fn log_likelihood(
    rho: &DMatrix<Complex64>,
    projectors: &[DMatrix<Complex64>; 16],
    weights: &[f64; 16],
) -> f64 {
    let mut ll = 0.0;
    let mut q_total = 0.0;
    for (p, &n) in projectors.iter().zip(weights.iter()) {
        let q = crate::quantum::trace_product(p, rho).re.max(1e-300);
        q_total += q;
        ll += n * q.ln();
    }
    ll - weights.iter().sum::<f64>() * q_total.ln()
}

/// Iterative maximum-likelihood refinement of a physical starting point.
///
/// Multiplicative updates ρ ← T ρ T† with T = G⁻¹ R, where
/// R = Σ n_ν/(N̂ q_ν) Π_ν and G = Σ Π_ν corrects for the settings not
/// forming a resolution of identity. Every step is gated on the profile
/// likelihood, so exact data (already the optimum) is a fixed point and
/// the exact-mode round trip is untouched. Rank-deficient starts whose
/// truncation hurt the likelihood are nudged off the boundary first.
fn mle_refine(start: &DMatrix<Complex64>, weights: &[f64; 16]) -> DMatrix<Complex64> {
    let settings = tomography_settings();
    let projectors: [DMatrix<Complex64>; 16] = std::array::from_fn(|nu| {
        settings[nu]
            .q1
            .projector()
            .kronecker(&settings[nu].q4.projector())
    });
    let mut g = DMatrix::from_element(4, 4, Complex64::new(0.0, 0.0));
    for p in &projectors {
        g += p;
    }
    let g_inv = g
        .clone()
        .try_inverse()
        .expect("setting Gram operator is invertible");

    let mut rho = start.clone();
    let mut ll = log_likelihood(&rho, &projectors, weights);

    // Off-boundary start, kept only when it raises the likelihood.
    let blended = {
        let id = DMatrix::<Complex64>::identity(4, 4);
        rho.map(|e| e * Complex64::new(0.99, 0.0))
            + id.map(|e: Complex64| e * Complex64::new(0.01 / 4.0, 0.0))
    };
    let ll_blended = log_likelihood(&blended, &projectors, weights);
    if ll_blended > ll {
        rho = blended;
        ll = ll_blended;
    }

    let total: f64 = weights.iter().sum();
    for _ in 0..250 {
        let mut q = [0.0f64; 16];
        let mut q_total = 0.0;
        for (nu, p) in projectors.iter().enumerate() {
            q[nu] = crate::quantum::trace_product(p, &rho).re.max(1e-14);
            q_total += q[nu];
        }
        let flux = total / q_total;
        let mut r_op = DMatrix::from_element(4, 4, Complex64::new(0.0, 0.0));
        for (nu, p) in projectors.iter().enumerate() {
            r_op += p.map(|e| e * Complex64::new(weights[nu] / (flux * q[nu]), 0.0));
        }
        let t = &g_inv * r_op;
        let mut candidate = &t * &rho * t.adjoint();
        candidate = (&candidate + candidate.adjoint()).map(|e| e * Complex64::new(0.5, 0.0));
        let trace = candidate.trace().re;
        if trace <= 0.0 {
            break;
        }
        candidate = candidate.map(|e| e / Complex64::new(trace, 0.0));
        let mut ll_candidate = log_likelihood(&candidate, &projectors, weights);
        if ll_candidate <= ll {
            // Damp a non-monotone multiplicative step.
            candidate = (&candidate + &rho).map(|e| e * Complex64::new(0.5, 0.0));
            let tr = candidate.trace().re;
            candidate = candidate.map(|e| e / Complex64::new(tr, 0.0));
            ll_candidate = log_likelihood(&candidate, &projectors, weights);
        }
        // Accept strict improvements only: a flat step means the start
        // was already the optimum (exact data) and must not drift.
        if ll_candidate <= ll {
            break;
        }
        let converged = ll_candidate - ll <= 1e-12 * ll.abs().max(1.0);
        rho = candidate;
        ll = ll_candidate;
        if converged {
            break;
        }
    }
    rho
}

/// The unprojected inversion; exposed so exact-mode pipelines can check
/// physicality before projection.
pub fn linear_inversion(weights: &[f64; 16]) -> Result<DMatrix<Complex64>> {
    let paulis = pauli::two_qubit();
    let settings = tomography_settings();
    // t[ν][k] = Tr[Π_ν P_k] is real for projector/Pauli pairs.
    let mut t = DMatrix::<f64>::zeros(16, 16);
    for (nu, setting) in settings.iter().enumerate() {
        let projector = setting.q1.projector().kronecker(&setting.q4.projector());
        for (k, p) in paulis.iter().enumerate() {
            t[(nu, k)] = crate::quantum::trace_product(&projector, p).re;
        }
    }
    let rhs = DVector::from_row_slice(weights);
    let solved = t
        .lu()
        .solve(&rhs)
        .ok_or_else(|| Error::NotPhysical("singular tomography system".into()))?;
    // Flux normalization: Tr[Σ yₖ Pₖ] = 4·y₀ estimates total pairs.
    let flux = 4.0 * solved[0];
    if flux <= 0.0 {
        return Err(Error::NotPhysical(format!(
            "inferred non-positive flux {flux:.3e}"
        )));
    }
    let mut raw = DMatrix::from_element(4, 4, Complex64::new(0.0, 0.0));
    for (k, p) in paulis.iter().enumerate() {
        raw += p.map(|e| e * Complex64::new(solved[k] / flux, 0.0));
    }
    Ok(raw)
}

/// Exact forward model: the 16 projective probabilities of a known state,
/// in [`tomography_settings`] order.
pub fn forward_probabilities(rho: &DensityMatrix) -> [f64; 16] {
    let mut out = [0.0f64; 16];
    for (nu, setting) in tomography_settings().into_iter().enumerate() {
        let projector = setting.q1.projector().kronecker(&setting.q4.projector());
        out[nu] = rho.expectation(&projector).re;
    }
    out
}
