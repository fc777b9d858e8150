//! Checks the branch identity behind CNOT-gate teleportation.
//!
//! Evolving |ψ⟩₁₄ ⊗ |Φ⁺⟩₂₃ through the local gates C₁₂ and C₃₄ must equal
//! the sum over the four measurement branches |m₂ m₃⟩₂₃, each carrying
//! C₁₄|ψ⟩₁₄ up to its known single-qubit correction. The check is exact
//! at f64 precision for every input state.
//!
//! Run with:
//! ```sh
//! cargo run -p telegate --example verify_identity
//! ```

use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use telegate::optics::Basis;
use telegate::protocol::verify_identity;
use telegate::quantum::PureState;

const RANDOM_INPUTS: usize = 100;
const SEED: u64 = 2024;
const TOLERANCE: f64 = 1e-12;

fn main() -> telegate::Result<()> {
    let singles = [Basis::H, Basis::V, Basis::D, Basis::R];
    let mut worst: (String, f64) = (String::new(), -1.0);

    println!("canonical product inputs:");
    for b1 in singles {
        for b4 in singles {
            let input = b1.state().tensor(&b4.state());
            let report = verify_identity(&input)?;
            println!("  |{b1}{b4}⟩  max deviation {:.3e}", report.max_deviation);
            if report.max_deviation > worst.1 {
                worst = (format!("{b1}{b4}"), report.max_deviation);
            }
        }
    }

    let mut rng = ChaCha12Rng::seed_from_u64(SEED);
    for k in 0..RANDOM_INPUTS {
        let input = PureState::haar_random(2, &mut rng);
        let report = verify_identity(&input)?;
        if report.max_deviation > worst.1 {
            worst = (format!("random-{k}"), report.max_deviation);
        }
    }
    println!("plus {RANDOM_INPUTS} Haar-random inputs");
    println!();
    println!(
        "worst deviation: {:.3e} on {} (tolerance {TOLERANCE:.0e})",
        worst.1, worst.0
    );
    assert!(worst.1 <= TOLERANCE, "identity check failed");
    println!("identity holds");
    Ok(())
}
