//! Characterizes the teleported gate by full process tomography: 16 input
//! states × 16 analyzer settings of D1–D4 coincidence data, reconstructed
//! into the χ-matrix, and compared against the ideal CNOT.
//!
//! Run with:
//! ```sh
//! cargo run -p telegate --example process_tomography
//! ```

use telegate::optics::NoiseModel;
use telegate::run::qpt_campaign;
use telegate::tomography::pauli;

const SEED: u64 = 3;

fn main() -> telegate::Result<()> {
    println!("ideal optics, exact probabilities:");
    let ideal = qpt_campaign(&NoiseModel::ideal(), SEED, true)?;
    println!("  F_P = {:.9}, F̄ = {:.9}", ideal.f_p, ideal.f_bar);

    println!();
    println!("bench visibilities (0.982 / 0.85 / 0.85), sampled counts:");
    let noisy = qpt_campaign(&NoiseModel::measured_visibilities(), SEED, false)?;
    println!("  F_P = {:.4}, F̄ = {:.4}", noisy.f_p, noisy.f_bar);
    println!(
        "  worst χ-vs-data reproduction (trace distance): {:.3}",
        noisy.reproduction_error
    );

    println!();
    println!("dominant |χ| elements of the teleported gate:");
    let chi = noisy.chi;
    let mut entries: Vec<(usize, usize, f64)> = (0..16)
        .flat_map(|m| (0..16).map(move |n| (m, n)))
        .map(|(m, n)| (m, n, chi.element(m, n).norm()))
        .collect();
    entries.sort_by(|a, b| b.2.partial_cmp(&a.2).unwrap());
    for (m, n, magnitude) in entries.into_iter().take(8) {
        println!(
            "  |χ[{:>2},{:>2}]| ({}·{}) = {:.4}",
            m,
            n,
            pauli::label(m),
            pauli::label(n),
            magnitude
        );
    }
    Ok(())
}
