//! Physical model of the linear-optics apparatus: pair source, wave
//! plates, beam splitters, interferometer noise, detectors and
//! coincidence-count generation.

pub mod counts;
pub mod elements;
pub mod noise;
pub mod simulate;

pub use counts::{
    tomography_settings, AnalyzerSetting, Basis, CoincidenceRow, CoincidenceTable, DetectorPair,
};
pub use elements::{
    bs_5050, element_operator, hwp, pbs, prep_to_state, qwp, Element, PlateAngles, PrepSetting,
};
pub use noise::{mz_dephase, spdc_source, NoiseModel};
pub use simulate::{
    derive_seed, detector_probabilities, evolve_apparatus, evolve_from_input,
    exact_tomography_probabilities, sample_setting, simulate_run, simulate_tomography_table,
    PairProbabilities,
};
