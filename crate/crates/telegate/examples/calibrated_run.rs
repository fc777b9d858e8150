//! Reproduces the headline fidelities of the experiment with the
//! calibrated two-parameter noise model.
//!
//! The bench figures put the source polarization visibility at 98.2% and
//! both Mach–Zehnder interferometers near 85%. With the interferometers
//! fixed at 85%, an effective source visibility of 0.90 also absorbs the
//! unwanted source components the raw visibility misses; that calibration
//! lands the process fidelity at F_P ≈ 0.80 and the average gate fidelity
//! at F̄ ≈ 0.84, with the entangling |RR⟩ run near F_s ≈ 0.81 and the
//! basis inputs in the high 0.9s.
//!
//! Run with:
//! ```sh
//! cargo run -p telegate --example calibrated_run
//! ```

use telegate::optics::{simulate_tomography_table, DetectorPair, NoiseModel};
use telegate::protocol::ideal_output;
use telegate::quantum::state_fidelity;
use telegate::run::{parse_input_label, qpt_campaign};
use telegate::tomography::{entanglement_witness, state_tomo};

const SEED: u64 = 0;

fn main() -> telegate::Result<()> {
    let noise = NoiseModel::calibrated();
    println!(
        "calibrated noise: source {:.3}, interferometers {:.2}/{:.2}, {} pairs/setting",
        noise.epr_visibility,
        noise.mz_visibility_12,
        noise.mz_visibility_3,
        noise.mean_counts_per_setting
    );
    println!();

    for label in ["RR", "HH", "HV", "VH", "VV"] {
        let (b1, b4) = parse_input_label(label)?;
        let input = b1.state().tensor(&b4.state());
        let target = ideal_output(&input)?;
        let table = simulate_tomography_table(&input, &noise, SEED)?;
        let rho = state_tomo(&table, DetectorPair::D1D4)?;
        let f_s = state_fidelity(&rho, &target);
        match entanglement_witness(&rho, &target) {
            Ok((_, verdict)) => {
                println!("F_s({label}) = {f_s:.3}   witness entangled: {verdict}")
            }
            Err(_) => println!("F_s({label}) = {f_s:.3}"),
        }
    }

    println!();
    let qpt = qpt_campaign(&noise, SEED, false)?;
    println!(
        "process tomography (sampled): F_P = {:.3}, F̄ = {:.3}",
        qpt.f_p, qpt.f_bar
    );
    let exact = qpt_campaign(&noise, SEED, true)?;
    println!(
        "process tomography (exact):   F_P = {:.4}, F̄ = {:.4}",
        exact.f_p, exact.f_bar
    );
    Ok(())
}
