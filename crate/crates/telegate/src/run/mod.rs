//! Configuration, campaign orchestration and report artifacts.

pub mod campaign;
pub mod config;
pub mod matrix_io;

pub use campaign::{
    assemble_summary, qpt_campaign, reconstruct_state, simulate_artifacts, write_process_artifacts,
    write_state_artifacts, ProcessReport, QptOutcome, StateReport, StateTomoOutcome,
};
pub use config::{parse_input_label, CustomAmplitudes, NoiseConfig, RunConfig};
pub use matrix_io::MatrixJson;
