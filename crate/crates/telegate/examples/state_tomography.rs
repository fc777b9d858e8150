//! Reconstructs the teleported output state of |R⟩₁|R⟩₄ from simulated
//! coincidence counts and tests the entanglement witness F_s > 1/2.
//!
//! With the bench visibilities the output overlap with
//! (|HR⟩ − |VL⟩)/√2 lands near 0.85, comfortably past the witness
//! threshold; the basis inputs |HH⟩…|VV⟩ teleport with F_s ≈ 0.99.
//!
//! Run with:
//! ```sh
//! cargo run -p telegate --example state_tomography
//! ```

use telegate::optics::{simulate_tomography_table, DetectorPair, NoiseModel};
use telegate::protocol::ideal_output;
use telegate::quantum::state_fidelity;
use telegate::run::parse_input_label;
use telegate::tomography::{entanglement_witness, state_tomo};

const SEED: u64 = 5;

fn main() -> telegate::Result<()> {
    let noise = NoiseModel::measured_visibilities();

    for label in ["RR", "HH", "HV", "VH", "VV"] {
        let (b1, b4) = parse_input_label(label)?;
        let input = b1.state().tensor(&b4.state());
        let target = ideal_output(&input)?;

        let table = simulate_tomography_table(&input, &noise, SEED)?;
        let rho = state_tomo(&table, DetectorPair::D1D4)?;
        let f_s = state_fidelity(&rho, &target);

        let witness = match entanglement_witness(&rho, &target) {
            Ok((_, true)) => "entangled (F_s > 0.5)".to_string(),
            Ok((_, false)) => "not entangled".to_string(),
            Err(_) => "n/a (product target)".to_string(),
        };
        println!("|{label}⟩: F_s = {f_s:.4}   witness: {witness}");
    }
    Ok(())
}
