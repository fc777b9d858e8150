//! Sweeps the resource visibility and watches the teleported-gate quality
//! degrade monotonically: the average output fidelity and the process
//! fidelity both fall as the shared pair gets noisier.
//!
//! Run with:
//! ```sh
//! cargo run -p telegate --example visibility_sweep
//! ```

use telegate::optics::{spdc_source, NoiseModel};
use telegate::protocol::{ideal_output, teleport_enumerate};
use telegate::quantum::{kets, state_fidelity};
use telegate::run::qpt_campaign;

fn main() -> telegate::Result<()> {
    let input = kets::r().tensor(&kets::r());
    let target = ideal_output(&input)?;

    println!("resource Werner visibility vs teleportation quality (|RR⟩ input):");
    println!("  v      avg F_s    F_P (exact QPT)");
    for v in [1.0, 0.9, 0.8, 0.5, 0.0] {
        let resource = spdc_source(v)?;
        let run = teleport_enumerate(&input, &resource)?;
        let avg_f: f64 = run
            .branches
            .iter()
            .map(|b| b.probability * state_fidelity(&b.corrected_output, &target))
            .sum();

        let noise = NoiseModel::new(v, 1.0, 1.0, 1.0e4)?;
        let qpt = qpt_campaign(&noise, 0, true)?;
        println!("  {v:.2}   {avg_f:.5}    {:.5}", qpt.f_p);
    }
    println!();
    println!("interferometer visibility vs process fidelity (source at 98.2%):");
    println!("  v_mz   F_P (exact QPT)");
    for v in [1.0, 0.95, 0.85, 0.7, 0.5] {
        let noise = NoiseModel::new(0.982, v, v, 1.0e4)?;
        let qpt = qpt_campaign(&noise, 0, true)?;
        println!("  {v:.2}   {:.5}", qpt.f_p);
    }
    Ok(())
}
