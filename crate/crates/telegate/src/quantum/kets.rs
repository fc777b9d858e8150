//! Named single-qubit states and the shared EPR pair.
//!
//! Polarization encoding: H ↔ 0, V ↔ 1. Diagonal and circular states
//! follow |D/A⟩ = (|H⟩ ± |V⟩)/√2 and |R/L⟩ = (|H⟩ ± i|V⟩)/√2.

use num_complex::Complex64;
use std::f64::consts::FRAC_1_SQRT_2;

use super::state::PureState;

fn single(a0: Complex64, a1: Complex64) -> PureState {
    PureState::new(vec![a0, a1]).expect("unit-norm one-qubit state")
}

/// |0⟩
pub fn zero() -> PureState {
    single(Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0))
}

/// |1⟩
pub fn one() -> PureState {
    single(Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0))
}

/// |+⟩ = (|0⟩ + |1⟩)/√2
pub fn plus() -> PureState {
    single(
        Complex64::new(FRAC_1_SQRT_2, 0.0),
        Complex64::new(FRAC_1_SQRT_2, 0.0),
    )
}

/// |−⟩ = (|0⟩ − |1⟩)/√2
pub fn minus() -> PureState {
    single(
        Complex64::new(FRAC_1_SQRT_2, 0.0),
        Complex64::new(-FRAC_1_SQRT_2, 0.0),
    )
}

/// |H⟩, horizontal polarization (alias of |0⟩).
pub fn h() -> PureState {
    zero()
}

/// |V⟩, vertical polarization (alias of |1⟩).
pub fn v() -> PureState {
    one()
}

/// |D⟩ = (|H⟩ + |V⟩)/√2
pub fn d() -> PureState {
    plus()
}

/// |A⟩ = (|H⟩ − |V⟩)/√2
pub fn a() -> PureState {
    minus()
}

/// |R⟩ = (|H⟩ + i|V⟩)/√2
pub fn r() -> PureState {
    single(
        Complex64::new(FRAC_1_SQRT_2, 0.0),
        Complex64::new(0.0, FRAC_1_SQRT_2),
    )
}

/// |L⟩ = (|H⟩ − i|V⟩)/√2
pub fn l() -> PureState {
    single(
        Complex64::new(FRAC_1_SQRT_2, 0.0),
        Complex64::new(0.0, -FRAC_1_SQRT_2),
    )
}

/// The EPR pair |Φ⁺⟩ = (|00⟩ + |11⟩)/√2.
pub fn bell_phi_plus() -> PureState {
    PureState::new(vec![
        Complex64::new(FRAC_1_SQRT_2, 0.0),
        Complex64::new(0.0, 0.0),
        Complex64::new(0.0, 0.0),
        Complex64::new(FRAC_1_SQRT_2, 0.0),
    ])
    .expect("unit-norm Bell state")
}

/// The entangled target (|H⟩|R⟩ − |V⟩|L⟩)/√2 produced by a CNOT from |R⟩|R⟩.
pub fn hr_minus_vl() -> PureState {
    PureState::new(vec![
        Complex64::new(0.5, 0.0),
        Complex64::new(0.0, 0.5),
        Complex64::new(-0.5, 0.0),
        Complex64::new(0.0, 0.5),
    ])
    .expect("unit-norm entangled target")
}
