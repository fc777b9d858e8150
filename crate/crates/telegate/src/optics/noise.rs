//! Imperfection model: source visibility and interferometer dephasing.
//!
//! The pair source is modeled as a Werner mixture of the EPR state with
//! white noise, parameterized by a single visibility. Each Mach–Zehnder
//! interferometer contributes pure path dephasing: coherences of its path
//! qubit shrink by the visibility factor, populations are untouched.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quantum::{bit_of, check_qubit, kets, DensityMatrix};

/// Default mean number of photon pairs per analyzer setting.
pub const DEFAULT_MEAN_COUNTS: f64 = 1.0e4;

/// Visibilities of the source and the two interferometers, plus the pair
/// flux used when sampling counts.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NoiseModel {
    /// Werner visibility of the pair source.
    pub epr_visibility: f64,
    /// Path-coherence retention of the PBS1–PBS3 interferometer (qubit 2).
    pub mz_visibility_12: f64,
    /// Path-coherence retention of the PBS2–BS interferometer (qubit 3).
    pub mz_visibility_3: f64,
    /// Mean photon pairs per analyzer setting.
    pub mean_counts_per_setting: f64,
}

impl NoiseModel {
    pub fn new(
        epr_visibility: f64,
        mz_visibility_12: f64,
        mz_visibility_3: f64,
        mean_counts_per_setting: f64,
    ) -> Result<Self> {
        for v in [epr_visibility, mz_visibility_12, mz_visibility_3] {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::VisibilityOutOfRange(v));
            }
        }
        if !mean_counts_per_setting.is_finite() || mean_counts_per_setting < 0.0 {
            return Err(Error::NonPositiveCounts(mean_counts_per_setting));
        }
        Ok(Self {
            epr_visibility,
            mz_visibility_12,
            mz_visibility_3,
            mean_counts_per_setting,
        })
    }

    /// Perfect optics: all visibilities 1, default flux.
    pub fn ideal() -> Self {
        Self {
            epr_visibility: 1.0,
            mz_visibility_12: 1.0,
            mz_visibility_3: 1.0,
            mean_counts_per_setting: DEFAULT_MEAN_COUNTS,
        }
    }

    /// The visibilities measured on the bench: source polarization
    /// entanglement at 98.2%, both interferometers near 85%.
    pub fn measured_visibilities() -> Self {
        Self {
            epr_visibility: 0.982,
            mz_visibility_12: 0.85,
            mz_visibility_3: 0.85,
            mean_counts_per_setting: DEFAULT_MEAN_COUNTS,
        }
    }

    /// Effective source visibility calibrated so the simulated process
    /// fidelity lands on the measured values (F_P ≈ 0.80, F̄ ≈ 0.84):
    /// with both interferometers at 85%, F_P = v·(1 + 0.85²)/2 + (1−v)/4,
    /// which hits 0.800 at v = 0.90. The raw 98.2% source visibility
    /// understates the source imperfection; see the calibration notes in
    /// the README.
    pub fn calibrated() -> Self {
        Self {
            epr_visibility: 0.90,
            mz_visibility_12: 0.85,
            mz_visibility_3: 0.85,
            mean_counts_per_setting: DEFAULT_MEAN_COUNTS,
        }
    }

    pub fn validate(&self) -> Result<()> {
        Self::new(
            self.epr_visibility,
            self.mz_visibility_12,
            self.mz_visibility_3,
            self.mean_counts_per_setting,
        )
        .map(|_| ())
    }
}

impl Default for NoiseModel {
    fn default() -> Self {
        Self::ideal()
    }
}

/// The two-photon polarization state leaving the pair source:
/// ρ = v·|Φ⁺⟩⟨Φ⁺| + (1−v)·I/4.
pub fn spdc_source(visibility: f64) -> Result<DensityMatrix> {
    if !(0.0..=1.0).contains(&visibility) {
        return Err(Error::VisibilityOutOfRange(visibility));
    }
    let epr = DensityMatrix::from_pure(&kets::bell_phi_plus());
    let mixed = DensityMatrix::maximally_mixed(2);
    let blend = epr.elements() * Complex64::new(visibility, 0.0)
        + mixed.elements() * Complex64::new(1.0 - visibility, 0.0);
    Ok(DensityMatrix::from_matrix_unchecked(blend))
}

/// Scales the path coherences of `path_qubit` by `visibility`, leaving
/// populations unchanged.
pub fn mz_dephase(
    state: &DensityMatrix,
    path_qubit: usize,
    visibility: f64,
) -> Result<DensityMatrix> {
    if !(0.0..=1.0).contains(&visibility) {
        return Err(Error::VisibilityOutOfRange(visibility));
    }
    check_qubit(state.num_qubits(), path_qubit)?;
    let n = state.num_qubits();
    let dim = state.dim();
    let mut out = state.elements().clone();
    for i in 0..dim {
        for j in 0..dim {
            if bit_of(i, n, path_qubit) != bit_of(j, n, path_qubit) {
                out[(i, j)] *= Complex64::new(visibility, 0.0);
            }
        }
    }
    Ok(DensityMatrix::from_matrix_unchecked(out))
}
