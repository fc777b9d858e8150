//! Orchestration of the simulation and tomography pipelines, plus the
//! flat-file artifacts the CLI emits.
//!
//! Artifact layout inside the configured output directory:
//! - `counts_<input>_<PAIR>.csv` / `.json` — 16-setting coincidence tables
//! - `rho_<input>_<PAIR>.json` — reconstructed (and corrected) output state
//! - `state_report_<input>.json` — F_s and witness verdict for one input
//! - `chi.json`, `process_report.json` — process tomography results
//! - `summary.json` — merged report over everything present

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::optics::{
    derive_seed, exact_tomography_probabilities, simulate_tomography_table, CoincidenceTable,
    DetectorPair, NoiseModel,
};
use crate::protocol::correction_for;
use crate::quantum::{state_fidelity, DensityMatrix};
use crate::tomography::{
    average_gate_fidelity, chi_ideal_cnot, entanglement_witness, process_fidelity, process_tomo,
    reproduction_error, state_tomo, state_tomo_from_weights, tomo_input_states, ChiMatrix,
};

use super::config::{NoiseConfig, RunConfig};
use super::matrix_io::MatrixJson;

/// Result of reconstructing one input's teleported output state.
#[derive(Debug, Clone)]
pub struct StateTomoOutcome {
    pub pair: DetectorPair,
    /// Reconstructed state with the pair's correction applied.
    pub rho: DensityMatrix,
    pub f_s: f64,
    /// Witness verdict; `None` when the target is not maximally entangled.
    pub entangled: Option<bool>,
}

/// Result of the full 16-input process-tomography campaign.
#[derive(Debug, Clone)]
pub struct QptOutcome {
    pub chi: ChiMatrix,
    pub f_p: f64,
    pub f_bar: f64,
    /// Max trace distance between χ-predicted and measured outputs.
    pub reproduction_error: f64,
    /// The per-input reconstructed output states, in campaign order.
    pub outputs: Vec<DensityMatrix>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StateReport {
    pub input: String,
    pub detector_pair: String,
    pub f_s: f64,
    pub entangled: Option<bool>,
    pub exact: bool,
    pub seed: u64,
    pub mean_counts_per_setting: f64,
    pub noise: NoiseConfig,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProcessReport {
    pub f_p: f64,
    pub f_bar: f64,
    pub reproduction_error: f64,
    pub exact: bool,
    pub seed: u64,
    pub mean_counts_per_setting: f64,
    pub noise: NoiseConfig,
}

fn counts_path(dir: &Path, slug: &str, pair: DetectorPair, ext: &str) -> PathBuf {
    dir.join(format!("counts_{slug}_{pair}.{ext}"))
}

/// Simulates the configured input and writes one CSV and one JSON table
/// per detector pair. Returns the written paths.
pub fn simulate_artifacts(config: &RunConfig) -> Result<Vec<PathBuf>> {
    let noise = config.noise_model()?;
    let input = config.input_state()?;
    let table = simulate_tomography_table(&input, &noise, config.seed)?;
    std::fs::create_dir_all(&config.output_dir)?;
    let slug = config.input_slug();
    let mut written = Vec::new();
    for pair in DetectorPair::ALL {
        let rows: Vec<_> = table
            .rows
            .iter()
            .copied()
            .filter(|r| r.detector_pair == pair)
            .collect();
        let pair_table = CoincidenceTable::new(rows);
        let csv_path = counts_path(&config.output_dir, &slug, pair, "csv");
        let json_path = counts_path(&config.output_dir, &slug, pair, "json");
        pair_table.write_csv(&csv_path)?;
        pair_table.write_json(&json_path)?;
        written.push(csv_path);
        written.push(json_path);
    }
    Ok(written)
}

/// Reconstructs the teleported output state for the configured input from
/// one detector pair, applying that pair's correction.
///
/// In exact mode the Born-rule probabilities are fed to the estimator
/// directly; otherwise the counts table written by [`simulate_artifacts`]
/// is read from the output directory.
pub fn reconstruct_state(
    config: &RunConfig,
    pair: DetectorPair,
    exact: bool,
) -> Result<StateTomoOutcome> {
    let input = config.input_state()?;
    let raw = if exact {
        let noise = config.noise_model()?;
        let probs = exact_tomography_probabilities(&input, &noise)?;
        let pair_index = DetectorPair::ALL
            .iter()
            .position(|&p| p == pair)
            .expect("pair is one of four");
        let mut weights = [0.0f64; 16];
        for (w, (_, p)) in weights.iter_mut().zip(probs.iter()) {
            *w = p.joint[pair_index];
        }
        state_tomo_from_weights(&weights)?
    } else {
        let slug = config.input_slug();
        let csv_path = counts_path(&config.output_dir, &slug, pair, "csv");
        let json_path = counts_path(&config.output_dir, &slug, pair, "json");
        let table = if csv_path.exists() {
            CoincidenceTable::read_csv(&csv_path)?
        } else if json_path.exists() {
            CoincidenceTable::read_json(&json_path)?
        } else {
            return Err(Error::MissingArtifact(csv_path.display().to_string()));
        };
        state_tomo(&table, pair)?
    };
    let (m2, m3) = pair.record();
    let rho = raw.apply_unitary(&correction_for(m2, m3), &[1, 2])?;
    let target = config.target_state()?;
    let f_s = state_fidelity(&rho, &target);
    let entangled = match entanglement_witness(&rho, &target) {
        Ok((_, verdict)) => Some(verdict),
        Err(Error::NotMaximallyEntangled(_, _)) => None,
        Err(e) => return Err(e),
    };
    Ok(StateTomoOutcome {
        pair,
        rho,
        f_s,
        entangled,
    })
}

/// Writes `rho_<input>_<PAIR>.json` and `state_report_<input>.json`.
pub fn write_state_artifacts(
    config: &RunConfig,
    outcome: &StateTomoOutcome,
    exact: bool,
) -> Result<(PathBuf, PathBuf)> {
    std::fs::create_dir_all(&config.output_dir)?;
    let slug = config.input_slug();
    let rho_path = config
        .output_dir
        .join(format!("rho_{slug}_{}.json", outcome.pair));
    MatrixJson::from_complex(outcome.rho.elements()).save(&rho_path)?;
    let report = StateReport {
        input: config.input.clone(),
        detector_pair: outcome.pair.to_string(),
        f_s: outcome.f_s,
        entangled: outcome.entangled,
        exact,
        seed: config.seed,
        mean_counts_per_setting: config.mean_counts_per_setting,
        noise: config.noise,
    };
    let report_path = config.output_dir.join(format!("state_report_{slug}.json"));
    std::fs::write(&report_path, serde_json::to_string_pretty(&report)?)?;
    Ok((rho_path, report_path))
}

/// Runs the full 16-input × 16-setting process-tomography campaign on the
/// D1D4 record and reconstructs the teleported gate's χ-matrix.
///
/// The 16 per-input tomographies run in parallel with seeds derived per
/// input, so the result is independent of scheduling.
pub fn qpt_campaign(noise: &NoiseModel, seed: u64, exact: bool) -> Result<QptOutcome> {
    let inputs = tomo_input_states();
    let outputs: Result<Vec<DensityMatrix>> = inputs
        .par_iter()
        .enumerate()
        .map(|(k, input)| {
            if exact {
                let probs = exact_tomography_probabilities(input, noise)?;
                let mut weights = [0.0f64; 16];
                for (w, (_, p)) in weights.iter_mut().zip(probs.iter()) {
                    *w = p.joint[0]; // D1D4
                }
                state_tomo_from_weights(&weights)
            } else {
                let table = simulate_tomography_table(input, noise, derive_seed(seed, k as u64))?;
                state_tomo(&table, DetectorPair::D1D4)
            }
        })
        .collect();
    let outputs = outputs?;
    let chi = process_tomo(&outputs)?;
    let f_p = process_fidelity(&chi, &chi_ideal_cnot());
    let f_bar = average_gate_fidelity(f_p.clamp(0.0, 1.0), 4)?;
    let reproduction_error = reproduction_error(&chi, &outputs);
    Ok(QptOutcome {
        chi,
        f_p,
        f_bar,
        reproduction_error,
        outputs,
    })
}

/// Writes `chi.json` and `process_report.json`.
pub fn write_process_artifacts(
    config: &RunConfig,
    outcome: &QptOutcome,
    exact: bool,
) -> Result<(PathBuf, PathBuf)> {
    std::fs::create_dir_all(&config.output_dir)?;
    let chi_path = config.output_dir.join("chi.json");
    MatrixJson::from_complex(outcome.chi.elements()).save(&chi_path)?;
    let report = ProcessReport {
        f_p: outcome.f_p,
        f_bar: outcome.f_bar,
        reproduction_error: outcome.reproduction_error,
        exact,
        seed: config.seed,
        mean_counts_per_setting: config.mean_counts_per_setting,
        noise: config.noise,
    };
    let report_path = config.output_dir.join("process_report.json");
    std::fs::write(&report_path, serde_json::to_string_pretty(&report)?)?;
    Ok((chi_path, report_path))
}

/// Merges every report in `dir` into `summary.json` with flat fidelity
/// keys (`f_s_rr`, …, `f_p`, `f_bar`), witness verdicts and config echoes.
pub fn assemble_summary(dir: &Path) -> Result<serde_json::Value> {
    let mut summary = serde_json::Map::new();
    let mut configs = serde_json::Map::new();
    let mut found_any = false;

    let mut names: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(|_| Error::MissingArtifact(format!("artifacts directory {}", dir.display())))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .collect();
    names.sort();

    for path in &names {
        let name = match path.file_name().and_then(|n| n.to_str()) {
            Some(n) => n,
            None => continue,
        };
        if let Some(slug) = name
            .strip_prefix("state_report_")
            .and_then(|n| n.strip_suffix(".json"))
        {
            let report: StateReport = serde_json::from_str(&std::fs::read_to_string(path)?)?;
            summary.insert(format!("f_s_{slug}"), serde_json::json!(report.f_s));
            if let Some(verdict) = report.entangled {
                summary.insert(
                    format!("witness_{slug}_entangled"),
                    serde_json::json!(verdict),
                );
            }
            configs.insert(format!("state_{slug}"), serde_json::to_value(&report)?);
            found_any = true;
        } else if name == "process_report.json" {
            let report: ProcessReport = serde_json::from_str(&std::fs::read_to_string(path)?)?;
            summary.insert("f_p".into(), serde_json::json!(report.f_p));
            summary.insert("f_bar".into(), serde_json::json!(report.f_bar));
            configs.insert("process".into(), serde_json::to_value(&report)?);
            found_any = true;
        }
    }
    if !found_any {
        return Err(Error::MissingArtifact(format!(
            "no reports found in {}",
            dir.display()
        )));
    }
    summary.insert("configs".into(), serde_json::Value::Object(configs));
    let value = serde_json::Value::Object(summary);
    std::fs::write(
        dir.join("summary.json"),
        serde_json::to_string_pretty(&value)?,
    )?;
    Ok(value)
}
