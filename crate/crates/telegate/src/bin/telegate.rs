//! Command-line driver for the gate-teleportation pipeline.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or config
//! error, 3 I/O or missing artifacts, 4 reconstruction failure.

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use telegate::optics::{Basis, DetectorPair};
use telegate::protocol;
use telegate::quantum::{kets, state_fidelity, DensityMatrix, PureState};
use telegate::run::{
    assemble_summary, qpt_campaign, reconstruct_state, simulate_artifacts, write_process_artifacts,
    write_state_artifacts, RunConfig,
};
use telegate::Error;

#[derive(Parser)]
#[command(
    name = "telegate",
    version,
    about = "Teleport a CNOT gate across two photonic qubits: verify the protocol, simulate the optical bench, and reconstruct the gate by tomography"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonArgs {
    /// TOML run configuration (defaults documented in the README)
    #[arg(long)]
    config: Option<PathBuf>,
    /// Override the configured seed
    #[arg(long)]
    seed: Option<u64>,
    /// Override the configured mean counts per setting
    #[arg(long)]
    counts: Option<f64>,
    /// Override the output directory (falls back to $TELEGATE_OUT)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Check the teleportation branch identity on canonical and random inputs
    Verify {
        /// Number of Haar-random inputs to test (>= 1)
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        inputs: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Simulate 16-setting coincidence tables for the configured input
    Simulate {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Reconstruct the teleported output state from count tables
    TomoState {
        #[command(flatten)]
        common: CommonArgs,
        /// Detector pair whose record conditions the reconstruction
        #[arg(long, default_value = "D1D4")]
        pair: String,
        /// Feed exact Born-rule probabilities instead of sampled counts
        #[arg(long)]
        exact: bool,
    },
    /// Run the full 16-input x 16-setting process-tomography campaign
    TomoProcess {
        #[command(flatten)]
        common: CommonArgs,
        /// Feed exact Born-rule probabilities instead of sampled counts
        #[arg(long)]
        exact: bool,
    },
    /// Merge every report in the artifacts directory into summary.json
    Report {
        /// Artifacts directory (falls back to $TELEGATE_OUT, then ./artifacts)
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn resolve_config(common: &CommonArgs) -> telegate::Result<RunConfig> {
    let mut config = match &common.config {
        Some(path) => RunConfig::from_file(path)?,
        None => RunConfig::default(),
    };
    if let Some(seed) = common.seed {
        config.seed = seed;
    }
    if let Some(counts) = common.counts {
        config.mean_counts_per_setting = counts;
    }
    if let Some(out) = &common.out {
        config.output_dir = out.clone();
    } else if config.output_dir.as_os_str() == "artifacts" {
        if let Ok(env_dir) = std::env::var("TELEGATE_OUT") {
            config.output_dir = PathBuf::from(env_dir);
        }
    }
    config.validate()?;
    Ok(config)
}

fn default_artifacts_dir(out: &Option<PathBuf>) -> PathBuf {
    out.clone().unwrap_or_else(|| {
        std::env::var("TELEGATE_OUT")
            .map(PathBuf::from)
            .unwrap_or_else(|_| PathBuf::from("artifacts"))
    })
}

fn cmd_verify(inputs: u64, seed: u64) -> telegate::Result<ExitCode> {
    let singles = [Basis::H, Basis::V, Basis::D, Basis::R];
    let mut cases: Vec<(String, PureState)> = Vec::new();
    for b1 in singles {
        for b4 in singles {
            cases.push((format!("{b1}{b4}"), b1.state().tensor(&b4.state())));
        }
    }
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    for k in 0..inputs {
        cases.push((format!("random-{k}"), PureState::haar_random(2, &mut rng)));
    }

    let mut max_deviation = -1.0f64;
    let mut worst = String::new();
    for (name, input) in &cases {
        let report = protocol::verify_identity(input)?;
        if report.max_deviation > max_deviation {
            max_deviation = report.max_deviation;
            worst = name.clone();
        }
    }

    // The featured entangling case: CNOT on |R⟩|R⟩.
    let rr = kets::r().tensor(&kets::r());
    let run = protocol::teleport_enumerate(&rr, &DensityMatrix::from_pure(&kets::bell_phi_plus()))?;
    let target = kets::hr_minus_vl();
    let rr_fidelity = run
        .branches
        .iter()
        .map(|b| state_fidelity(&b.corrected_output, &target))
        .fold(f64::INFINITY, f64::min);
    let (ebits, cbits) = protocol::communication_cost(&run.trace)?;

    println!(
        "identity check over {} canonical + {} random inputs",
        16, inputs
    );
    println!("  max amplitude deviation: {max_deviation:.3e} (worst: {worst}, tolerance 1e-12)");
    println!("  |RR> output fidelity vs (|HR> - |VL>)/sqrt(2): {rr_fidelity:.12}");
    println!("  communication cost: {ebits} ebit, {cbits} cbits");
    if max_deviation <= 1e-12 {
        println!("PASS");
        Ok(ExitCode::SUCCESS)
    } else {
        println!("FAIL");
        Ok(ExitCode::from(1))
    }
}

fn cmd_simulate(common: &CommonArgs) -> telegate::Result<ExitCode> {
    let config = resolve_config(common)?;
    let written = simulate_artifacts(&config)?;
    println!(
        "simulated input {} at seed {} with mean {} pairs/setting",
        config.input, config.seed, config.mean_counts_per_setting
    );
    for path in written {
        println!("  wrote {}", path.display());
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_tomo_state(common: &CommonArgs, pair: &str, exact: bool) -> telegate::Result<ExitCode> {
    let config = resolve_config(common)?;
    let pair = DetectorPair::from_str(pair)
        .map_err(|_| Error::InvalidArgument(format!("unknown detector pair {pair:?}")))?;
    let outcome = reconstruct_state(&config, pair, exact)?;
    let (rho_path, report_path) = write_state_artifacts(&config, &outcome, exact)?;
    println!(
        "reconstructed {} from {} ({})",
        config.input,
        pair,
        if exact {
            "exact probabilities"
        } else {
            "sampled counts"
        }
    );
    println!("  F_s = {:.6}", outcome.f_s);
    match outcome.entangled {
        Some(true) => println!("  witness: entangled (F_s > 0.5)"),
        Some(false) => println!("  witness: not entangled (F_s <= 0.5)"),
        None => println!("  witness: n/a (target is not maximally entangled)"),
    }
    println!("  wrote {}", rho_path.display());
    println!("  wrote {}", report_path.display());
    Ok(ExitCode::SUCCESS)
}

fn cmd_tomo_process(common: &CommonArgs, exact: bool) -> telegate::Result<ExitCode> {
    let config = resolve_config(common)?;
    let noise = config.noise_model()?;
    let outcome = qpt_campaign(&noise, config.seed, exact)?;
    let (chi_path, report_path) = write_process_artifacts(&config, &outcome, exact)?;
    println!(
        "process tomography over 16 inputs x 16 settings ({})",
        if exact {
            "exact probabilities"
        } else {
            "sampled counts"
        }
    );
    println!("  F_P   = {:.6}", outcome.f_p);
    println!("  F_bar = {:.6}", outcome.f_bar);
    println!(
        "  worst output reproduction (trace distance): {:.3e}",
        outcome.reproduction_error
    );
    println!("  wrote {}", chi_path.display());
    println!("  wrote {}", report_path.display());
    Ok(ExitCode::SUCCESS)
}

fn cmd_report(out: &Option<PathBuf>) -> telegate::Result<ExitCode> {
    let dir = default_artifacts_dir(out);
    let summary = assemble_summary(&dir)?;
    println!("wrote {}", dir.join("summary.json").display());
    if let Some(object) = summary.as_object() {
        for (key, value) in object.iter().filter(|(k, _)| *k != "configs") {
            println!("  {key}: {value}");
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn exit_code_for(error: &Error) -> u8 {
    match error {
        Error::Io(_) | Error::Json(_) | Error::Csv(_) | Error::MissingArtifact(_) => 3,
        Error::Config(_) | Error::InvalidArgument(_) | Error::UnknownBasis(_) => 2,
        _ => 4,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Verify { inputs, seed } => cmd_verify(*inputs, *seed),
        Command::Simulate { common } => cmd_simulate(common),
        Command::TomoState {
            common,
            pair,
            exact,
        } => cmd_tomo_state(common, pair, *exact),
        Command::TomoProcess { common, exact } => cmd_tomo_process(common, *exact),
        Command::Report { out } => cmd_report(out),
    };
    match result {
        Ok(code) => code,
        Err(error) => {
            eprintln!("error: {error}");
            ExitCode::from(exit_code_for(&error))
        }
    }
}
