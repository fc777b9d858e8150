//! End-to-end apparatus model and Monte-Carlo coincidence counting.
//!
//! The four-qubit register is ordered (1,2,3,4) = (polarization of the
//! upper photon, path of the upper photon, path of the lower photon,
//! polarization of the lower photon). The chain:
//!
//! 1. the source emits a polarization pair (Werner state at the source
//!    visibility) and both paths start in |0⟩;
//! 2. PBS1/PBS2 map polarization onto path, HWP1/HWP2 at 45° in the |1⟩
//!    arms reset the polarizations to |H⟩ — entanglement now lives on
//!    the paths;
//! 3. the preparation plates A1–A4 set the polarization qubits, per arm;
//! 4. the upper path dephases (MZ 1 visibility), PBS3 applies C₁₂;
//! 5. HWP3 at 45° in the |1⟩₃ arm applies C₃₄, the lower path dephases
//!    (MZ 2 visibility), and the 50/50 BS closes the interferometer;
//! 6. detectors D1/D2 read the PBS3 output port (qubit 2), D4/D3 read
//!    the BS output port (qubit 3 in the {|+⟩,|−⟩} basis), and each
//!    detector sits behind a polarization analyzer.
//!
//! Counts per detector pair are Poisson with mean equal to the joint
//! Born probability times the configured pair flux.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rand_distr::Distribution;

use crate::error::Result;
use crate::protocol;
use crate::quantum::{DensityMatrix, Operator, PureState};

use super::counts::{
    tomography_settings, AnalyzerSetting, CoincidenceRow, CoincidenceTable, DetectorPair,
};
use super::elements::{bs_5050, pbs, PrepSetting};
use super::noise::{mz_dephase, spdc_source, NoiseModel};

/// Exact detector statistics at one analyzer setting, ordered as
/// [`DetectorPair::ALL`].
#[derive(Debug, Clone, Copy)]
pub struct PairProbabilities {
    /// Joint probability that the pair fires **and** both photons pass
    /// their analyzers. These are the count rates.
    pub joint: [f64; 4],
    /// Analyzer-marginal pathway probabilities; they sum to one.
    pub pathway: [f64; 4],
}

/// Evolves the apparatus from the source through every optical element,
/// using the configured preparation plates.
pub fn evolve_apparatus(prep: &PrepSetting, noise: &NoiseModel) -> Result<DensityMatrix> {
    noise.validate()?;
    let pair = spdc_source(noise.epr_visibility)?;
    let mut rho = embed_polarization_pair(&pair);
    // PBS1/PBS2: polarization → path
    rho = rho.apply_unitary(&pbs(), &[1, 2])?;
    rho = rho.apply_unitary(&pbs(), &[4, 3])?;
    // HWP1/HWP2 at 45° in the |1⟩ arms: flip polarization when path = 1
    rho = rho.apply_unitary(&Operator::cnot(), &[2, 1])?;
    rho = rho.apply_unitary(&Operator::cnot(), &[3, 4])?;
    // Preparation plates, conditioned on the arm they sit in
    rho = rho.apply_unitary(
        &arm_conditional(&prep.a1.operator(), &prep.a2.operator()),
        &[1, 2],
    )?;
    rho = rho.apply_unitary(
        &arm_conditional(&prep.a3.operator(), &prep.a4.operator()),
        &[4, 3],
    )?;
    finish_interferometers(rho, noise)
}

/// Evolves the apparatus for a directly specified two-qubit input state on
/// the polarization qubits (1,4). Equivalent to [`evolve_apparatus`] for
/// product inputs and also accepts entangled ones.
pub fn evolve_from_input(input14: &PureState, noise: &NoiseModel) -> Result<DensityMatrix> {
    noise.validate()?;
    let resource = spdc_source(noise.epr_visibility)?;
    let rho = protocol::prepare_joint(input14, &resource)?;
    finish_interferometers(rho, noise)
}

fn finish_interferometers(rho: DensityMatrix, noise: &NoiseModel) -> Result<DensityMatrix> {
    // MZ 1 arms accumulate phase noise before PBS3 closes the loop
    let rho = mz_dephase(&rho, 2, noise.mz_visibility_12)?;
    let rho = rho.apply_unitary(&pbs(), &[1, 2])?; // PBS3 = C₁₂
    let rho = rho.apply_unitary(&Operator::cnot(), &[3, 4])?; // HWP3 = C₃₄
    let rho = mz_dephase(&rho, 3, noise.mz_visibility_3)?;
    rho.apply_unitary(&bs_5050(), &[3])
}

/// Places a two-photon polarization state on qubits (1,4) with both path
/// qubits in |0⟩.
fn embed_polarization_pair(pair: &DensityMatrix) -> DensityMatrix {
    let mut out = DMatrix::from_element(16, 16, Complex64::new(0.0, 0.0));
    for b1 in 0..2usize {
        for b4 in 0..2usize {
            for c1 in 0..2usize {
                for c4 in 0..2usize {
                    out[((b1 << 3) | b4, (c1 << 3) | c4)] =
                        pair.element((b1 << 1) | b4, (c1 << 1) | c4);
                }
            }
        }
    }
    DensityMatrix::from_matrix_unchecked(out)
}

/// Plate unitary applied to a polarization qubit conditioned on its path:
/// `arm0` acts in path |0⟩, `arm1` in path |1⟩. Ordered (polarization, path).
fn arm_conditional(arm0: &Operator, arm1: &Operator) -> Operator {
    let zero = Complex64::new(0.0, 0.0);
    let mut m = DMatrix::from_element(4, 4, zero);
    for r in 0..2 {
        for c in 0..2 {
            m[(2 * r, 2 * c)] = arm0.matrix()[(r, c)];
            m[(2 * r + 1, 2 * c + 1)] = arm1.matrix()[(r, c)];
        }
    }
    Operator::new(m).expect("block-diagonal plate unitary")
}

/// Detector-pair to measured ports: qubit 2 port (0 → D1, 1 → D2) and
/// qubit 3 port after the BS (0 → D4 ≙ |+⟩, 1 → D3 ≙ |−⟩).
fn ports(pair: DetectorPair) -> (usize, usize) {
    match pair {
        DetectorPair::D1D4 => (0, 0),
        DetectorPair::D1D3 => (0, 1),
        DetectorPair::D2D4 => (1, 0),
        DetectorPair::D2D3 => (1, 1),
    }
}

/// Exact Born-rule detector statistics for a fully evolved state.
pub fn detector_probabilities(
    rho_final: &DensityMatrix,
    analyzers: &AnalyzerSetting,
) -> PairProbabilities {
    let id2 = DMatrix::<Complex64>::identity(2, 2);
    let pol1 = analyzers.q1.projector();
    let pol4 = analyzers.q4.projector();
    let port = |bit: usize| -> DMatrix<Complex64> {
        let mut m = DMatrix::from_element(2, 2, Complex64::new(0.0, 0.0));
        m[(bit, bit)] = Complex64::new(1.0, 0.0);
        m
    };
    let mut joint = [0.0; 4];
    let mut pathway = [0.0; 4];
    for (k, pair) in DetectorPair::ALL.into_iter().enumerate() {
        let (p2, p3) = ports(pair);
        let with_analyzers = pol1
            .kronecker(&port(p2))
            .kronecker(&port(p3))
            .kronecker(&pol4);
        let marginal = id2
            .kronecker(&port(p2))
            .kronecker(&port(p3))
            .kronecker(&id2);
        joint[k] = rho_final.expectation(&with_analyzers).re.max(0.0);
        pathway[k] = rho_final.expectation(&marginal).re.max(0.0);
    }
    PairProbabilities { joint, pathway }
}

/// Deterministic per-cell seed derivation (splitmix64 finalizer), so
/// campaign cells can be sampled independently and in any order.
pub fn derive_seed(base: u64, stream: u64) -> u64 {
    let mut z = base ^ stream.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn poisson_count<R: rand::Rng + ?Sized>(mean: f64, rng: &mut R) -> u64 {
    if mean <= 0.0 {
        return 0;
    }
    let draw: f64 = rand_distr::Poisson::new(mean)
        .expect("positive finite mean")
        .sample(rng);
    draw.round() as u64
}

/// Simulates one analyzer setting: evolves the apparatus, computes the
/// exact joint probabilities, and draws one Poisson count per detector
/// pair at mean `probability × mean_counts_per_setting`.
pub fn simulate_run(
    prep: &PrepSetting,
    noise: &NoiseModel,
    analyzers: AnalyzerSetting,
    seed: u64,
) -> Result<Vec<CoincidenceRow>> {
    let rho = evolve_apparatus(prep, noise)?;
    Ok(sample_setting(&rho, noise, analyzers, seed))
}

/// Poisson counts for one setting of an already evolved state.
pub fn sample_setting(
    rho_final: &DensityMatrix,
    noise: &NoiseModel,
    analyzers: AnalyzerSetting,
    seed: u64,
) -> Vec<CoincidenceRow> {
    let probs = detector_probabilities(rho_final, &analyzers);
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    DetectorPair::ALL
        .into_iter()
        .enumerate()
        .map(|(k, pair)| CoincidenceRow {
            setting_q1: analyzers.q1,
            setting_q4: analyzers.q4,
            detector_pair: pair,
            count: poisson_count(probs.joint[k] * noise.mean_counts_per_setting, &mut rng),
        })
        .collect()
}

/// Full 16-setting tomography table for one input state: all four detector
/// pairs at each setting, with a derived seed per setting.
pub fn simulate_tomography_table(
    input14: &PureState,
    noise: &NoiseModel,
    seed: u64,
) -> Result<CoincidenceTable> {
    let rho = evolve_from_input(input14, noise)?;
    let mut rows = Vec::with_capacity(64);
    for (idx, setting) in tomography_settings().into_iter().enumerate() {
        rows.extend(sample_setting(
            &rho,
            noise,
            setting,
            derive_seed(seed, idx as u64),
        ));
    }
    Ok(CoincidenceTable::new(rows))
}

/// Exact joint probabilities over the 16 tomography settings; the
/// infinite-statistics analog of [`simulate_tomography_table`].
pub fn exact_tomography_probabilities(
    input14: &PureState,
    noise: &NoiseModel,
) -> Result<Vec<(AnalyzerSetting, PairProbabilities)>> {
    let rho = evolve_from_input(input14, noise)?;
    Ok(tomography_settings()
        .into_iter()
        .map(|s| (s, detector_probabilities(&rho, &s)))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::optics::counts::Basis;
    use crate::quantum::kets;

    #[test]
    fn apparatus_transfers_entanglement_to_the_paths() {
        // With ideal optics and |H⟩ preparations the state entering the
        // measurement stage equals the protocol-level evolution of |HH⟩.
        let prep = PrepSetting::for_labels(Basis::H, Basis::H);
        let via_apparatus = evolve_apparatus(&prep, &NoiseModel::ideal()).unwrap();
        let via_input =
            evolve_from_input(&kets::h().tensor(&kets::h()), &NoiseModel::ideal()).unwrap();
        assert!((via_apparatus.elements() - via_input.elements()).norm() < 1e-12);
    }

    #[test]
    fn apparatus_and_input_routes_agree_for_every_tomography_input() {
        let noise = NoiseModel::measured_visibilities();
        for b1 in Basis::TOMOGRAPHY {
            for b4 in Basis::TOMOGRAPHY {
                let prep = PrepSetting::for_labels(b1, b4);
                let input = b1.state().tensor(&b4.state());
                let a = evolve_apparatus(&prep, &noise).unwrap();
                let b = evolve_from_input(&input, &noise).unwrap();
                assert!(
                    (a.elements() - b.elements()).norm() < 1e-12,
                    "routes disagree for {b1:?}{b4:?}"
                );
            }
        }
    }

    #[test]
    fn pathway_probabilities_sum_to_one() {
        let noise = NoiseModel::measured_visibilities();
        let rho = evolve_from_input(&kets::r().tensor(&kets::r()), &noise).unwrap();
        for setting in tomography_settings() {
            let p = detector_probabilities(&rho, &setting);
            let total: f64 = p.pathway.iter().sum();
            assert!((total - 1.0).abs() < 1e-12);
            for k in 0..4 {
                assert!(p.joint[k] <= p.pathway[k] + 1e-12);
            }
        }
    }

    #[test]
    fn hh_input_with_hh_analyzers_gives_quarter_rate_on_d1d4() {
        let rho = evolve_from_input(&kets::h().tensor(&kets::h()), &NoiseModel::ideal()).unwrap();
        let p = detector_probabilities(&rho, &AnalyzerSetting::new(Basis::H, Basis::H));
        assert!(
            (p.joint[0] - 0.25).abs() < 1e-12,
            "D1D4 rate {}",
            p.joint[0]
        );
        // branch pathways stay uniform
        for k in 0..4 {
            assert!((p.pathway[k] - 0.25).abs() < 1e-12);
        }
    }

    #[test]
    fn rr_input_d1d4_rates_match_the_entangled_target_projections() {
        // Conditioned on D1D4 the output is (|HR⟩ − |VL⟩)/√2, so the joint
        // rate at each setting is 1/4 of the target's projection.
        let rho = evolve_from_input(&kets::r().tensor(&kets::r()), &NoiseModel::ideal()).unwrap();
        let target = kets::hr_minus_vl();
        for setting in tomography_settings() {
            let p = detector_probabilities(&rho, &setting);
            let projector_state = setting.q1.state().tensor(&setting.q4.state());
            let expected = 0.25 * target.inner(&projector_state).norm_sqr();
            assert!(
                (p.joint[0] - expected).abs() < 1e-12,
                "setting {:?}{:?}: {} vs {}",
                setting.q1,
                setting.q4,
                p.joint[0],
                expected
            );
        }
    }

    #[test]
    fn zero_flux_produces_zero_counts() {
        let mut noise = NoiseModel::ideal();
        noise.mean_counts_per_setting = 0.0;
        let prep = PrepSetting::for_labels(Basis::R, Basis::R);
        let rows =
            simulate_run(&prep, &noise, AnalyzerSetting::new(Basis::H, Basis::H), 9).unwrap();
        assert!(rows.iter().all(|r| r.count == 0));
    }

    #[test]
    fn sampling_is_deterministic_per_seed() {
        let noise = NoiseModel::measured_visibilities();
        let input = kets::r().tensor(&kets::r());
        let a = simulate_tomography_table(&input, &noise, 31).unwrap();
        let b = simulate_tomography_table(&input, &noise, 31).unwrap();
        let c = simulate_tomography_table(&input, &noise, 32).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn poisson_counts_track_their_means() {
        // Empirical mean over 1000 seeded repeats within three standard
        // errors of probability × flux.
        let noise = NoiseModel::ideal();
        let rho = evolve_from_input(&kets::r().tensor(&kets::r()), &noise).unwrap();
        let setting = AnalyzerSetting::new(Basis::H, Basis::H);
        let probs = detector_probabilities(&rho, &setting);
        let repeats = 1000u64;
        let mut totals = [0u64; 4];
        for rep in 0..repeats {
            let rows = sample_setting(&rho, &noise, setting, derive_seed(777, rep));
            for (k, row) in rows.iter().enumerate() {
                totals[k] += row.count;
            }
        }
        for (k, &total) in totals.iter().enumerate() {
            let lambda = probs.joint[k] * noise.mean_counts_per_setting;
            if lambda == 0.0 {
                assert_eq!(total, 0);
                continue;
            }
            let mean = total as f64 / repeats as f64;
            let standard_error = (lambda / repeats as f64).sqrt();
            assert!(
                (mean - lambda).abs() <= 3.0 * standard_error,
                "pair {k}: mean {mean} vs λ {lambda}"
            );
        }
    }
}
