//! Run configuration: TOML file with documented defaults.
//!
//! ```toml
//! # every field is optional; the values below are the defaults
//! input = "RR"                     # two letters from {H,V,D,A,R,L}, or "custom"
//! mean_counts_per_setting = 10000.0
//! seed = 0
//! output_dir = "artifacts"
//!
//! [noise]
//! epr_visibility = 1.0
//! mz_visibility_12 = 1.0
//! mz_visibility_3 = 1.0
//!
//! # only read when input = "custom": amplitudes over |HH⟩,|HV⟩,|VH⟩,|VV⟩
//! # [custom_amplitudes]
//! # re = [1.0, 0.0, 0.0, 0.0]
//! # im = [0.0, 0.0, 0.0, 0.0]
//! ```

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::optics::{Basis, NoiseModel};
use crate::protocol;
use crate::quantum::PureState;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct NoiseConfig {
    pub epr_visibility: f64,
    pub mz_visibility_12: f64,
    pub mz_visibility_3: f64,
}

impl Default for NoiseConfig {
    fn default() -> Self {
        Self {
            epr_visibility: 1.0,
            mz_visibility_12: 1.0,
            mz_visibility_3: 1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CustomAmplitudes {
    pub re: [f64; 4],
    pub im: [f64; 4],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub noise: NoiseConfig,
    /// Input state of qubits (1,4): a two-letter label or "custom".
    pub input: String,
    pub custom_amplitudes: Option<CustomAmplitudes>,
    pub mean_counts_per_setting: f64,
    pub seed: u64,
    pub output_dir: PathBuf,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            noise: NoiseConfig::default(),
            input: "RR".to_string(),
            custom_amplitudes: None,
            mean_counts_per_setting: 1.0e4,
            seed: 0,
            output_dir: PathBuf::from("artifacts"),
        }
    }
}

impl RunConfig {
    pub fn from_toml_str(data: &str) -> Result<Self> {
        let config: Self = toml::from_str(data).map_err(|e| Error::Config(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        Self::from_toml_str(&std::fs::read_to_string(path)?)
    }

    pub fn validate(&self) -> Result<()> {
        self.noise_model()?;
        self.input_state()?;
        Ok(())
    }

    pub fn noise_model(&self) -> Result<NoiseModel> {
        NoiseModel::new(
            self.noise.epr_visibility,
            self.noise.mz_visibility_12,
            self.noise.mz_visibility_3,
            self.mean_counts_per_setting,
        )
    }

    /// The configured input state of qubits (1,4).
    pub fn input_state(&self) -> Result<PureState> {
        if self.input.eq_ignore_ascii_case("custom") {
            let amplitudes = self.custom_amplitudes.ok_or_else(|| {
                Error::Config("input = \"custom\" requires [custom_amplitudes]".into())
            })?;
            let v: Vec<Complex64> = (0..4)
                .map(|k| Complex64::new(amplitudes.re[k], amplitudes.im[k]))
                .collect();
            PureState::normalized(v)
        } else {
            let (b1, b4) = parse_input_label(&self.input)?;
            Ok(b1.state().tensor(&b4.state()))
        }
    }

    /// Short lowercase tag used in artifact file names.
    pub fn input_slug(&self) -> String {
        self.input.to_ascii_lowercase()
    }

    /// The teleported-gate target for the configured input: C₁₄|input⟩.
    pub fn target_state(&self) -> Result<PureState> {
        protocol::ideal_output(&self.input_state()?)
    }
}

pub fn parse_input_label(label: &str) -> Result<(Basis, Basis)> {
    let upper = label.to_ascii_uppercase();
    let chars: Vec<char> = upper.chars().collect();
    if chars.len() != 2 {
        return Err(Error::Config(format!(
            "input label must be two letters from {{H,V,D,A,R,L}} or \"custom\", got {label:?}"
        )));
    }
    let b1 = Basis::from_str(&chars[0].to_string())?;
    let b4 = Basis::from_str(&chars[1].to_string())?;
    Ok((b1, b4))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::{kets, pure_fidelity};

    #[test]
    fn defaults_are_the_documented_ones() {
        let config = RunConfig::default();
        assert_eq!(config.input, "RR");
        assert_eq!(config.seed, 0);
        assert_eq!(config.mean_counts_per_setting, 1.0e4);
        let noise = config.noise_model().unwrap();
        assert_eq!(noise.epr_visibility, 1.0);
        let input = config.input_state().unwrap();
        assert!((pure_fidelity(&input, &kets::r().tensor(&kets::r())) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn toml_round_trip_and_overrides() {
        let config = RunConfig::from_toml_str(
            r#"
            input = "HV"
            seed = 17
            mean_counts_per_setting = 500.0
            [noise]
            epr_visibility = 0.9
            mz_visibility_12 = 0.8
            mz_visibility_3 = 0.7
            "#,
        )
        .unwrap();
        assert_eq!(config.seed, 17);
        let noise = config.noise_model().unwrap();
        assert_eq!(noise.mz_visibility_3, 0.7);
        assert_eq!(noise.mean_counts_per_setting, 500.0);
        let input = config.input_state().unwrap();
        assert!((pure_fidelity(&input, &kets::h().tensor(&kets::v())) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn custom_amplitudes_are_normalized() {
        let config = RunConfig::from_toml_str(
            r#"
            input = "custom"
            [custom_amplitudes]
            re = [1.0, 0.0, 0.0, 1.0]
            im = [0.0, 0.0, 0.0, 0.0]
            "#,
        )
        .unwrap();
        let state = config.input_state().unwrap();
        assert!((pure_fidelity(&state, &kets::bell_phi_plus()) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn bad_configs_are_rejected() {
        assert!(RunConfig::from_toml_str("input = \"XX\"").is_err());
        assert!(RunConfig::from_toml_str("input = \"custom\"").is_err());
        assert!(RunConfig::from_toml_str("[noise]\nepr_visibility = 2.0").is_err());
        assert!(RunConfig::from_toml_str("unknown_field = 3").is_err());
    }
}
