//! Analyzer settings, detector pairs and coincidence-count tables.
//!
//! Tables serialize to CSV with header `setting_q1,setting_q4,detector_pair,count`
//! and to a JSON array of row objects; both round-trip losslessly.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::protocol::Sign;
use crate::quantum::{kets, PureState};

/// Polarization analyzer (or preparation) basis element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Basis {
    H,
    V,
    D,
    A,
    R,
    L,
}

impl Basis {
    pub const ALL: [Basis; 6] = [Basis::H, Basis::V, Basis::D, Basis::A, Basis::R, Basis::L];

    /// The four preparation/analysis states used for tomography.
    pub const TOMOGRAPHY: [Basis; 4] = [Basis::H, Basis::V, Basis::D, Basis::R];

    pub fn state(self) -> PureState {
        match self {
            Basis::H => kets::h(),
            Basis::V => kets::v(),
            Basis::D => kets::d(),
            Basis::A => kets::a(),
            Basis::R => kets::r(),
            Basis::L => kets::l(),
        }
    }

    /// The rank-1 projector |b⟩⟨b| as a 2×2 matrix.
    pub fn projector(self) -> nalgebra::DMatrix<num_complex::Complex64> {
        let v = self.state();
        v.amplitudes() * v.amplitudes().adjoint()
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for Basis {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "H" => Ok(Basis::H),
            "V" => Ok(Basis::V),
            "D" => Ok(Basis::D),
            "A" => Ok(Basis::A),
            "R" => Ok(Basis::R),
            "L" => Ok(Basis::L),
            other => Err(Error::UnknownBasis(other.to_string())),
        }
    }
}

/// Analyzer settings for the two polarization qubits (1 and 4).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AnalyzerSetting {
    pub q1: Basis,
    pub q4: Basis,
}

impl AnalyzerSetting {
    pub fn new(q1: Basis, q4: Basis) -> Self {
        Self { q1, q4 }
    }
}

/// The 16 analyzer settings {H,V,D,R} ⊗ {H,V,D,R} used for state
/// tomography, ordered with the qubit-1 label slowest.
pub fn tomography_settings() -> [AnalyzerSetting; 16] {
    let mut out = [AnalyzerSetting::new(Basis::H, Basis::H); 16];
    for (i, &b1) in Basis::TOMOGRAPHY.iter().enumerate() {
        for (j, &b4) in Basis::TOMOGRAPHY.iter().enumerate() {
            out[i * 4 + j] = AnalyzerSetting::new(b1, b4);
        }
    }
    out
}

/// A coincidence between one upper-photon detector (D1/D2) and one
/// lower-photon detector (D3/D4). The pairs tag the measurement record:
/// D1D4 ↔ |0⟩₂|+⟩₃, D1D3 ↔ |0⟩₂|−⟩₃, D2D4 ↔ |1⟩₂|+⟩₃, D2D3 ↔ |1⟩₂|−⟩₃.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum DetectorPair {
    D1D4,
    D1D3,
    D2D4,
    D2D3,
}

impl DetectorPair {
    pub const ALL: [DetectorPair; 4] = [
        DetectorPair::D1D4,
        DetectorPair::D1D3,
        DetectorPair::D2D4,
        DetectorPair::D2D3,
    ];

    /// The (m2, m3) measurement record this pair announces.
    pub fn record(self) -> (u8, Sign) {
        match self {
            DetectorPair::D1D4 => (0, Sign::Plus),
            DetectorPair::D1D3 => (0, Sign::Minus),
            DetectorPair::D2D4 => (1, Sign::Plus),
            DetectorPair::D2D3 => (1, Sign::Minus),
        }
    }

    pub fn from_record(m2: u8, m3: Sign) -> Self {
        match (m2, m3) {
            (0, Sign::Plus) => DetectorPair::D1D4,
            (0, Sign::Minus) => DetectorPair::D1D3,
            (1, Sign::Plus) => DetectorPair::D2D4,
            _ => DetectorPair::D2D3,
        }
    }
}

impl fmt::Display for DetectorPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for DetectorPair {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "D1D4" => Ok(DetectorPair::D1D4),
            "D1D3" => Ok(DetectorPair::D1D3),
            "D2D4" => Ok(DetectorPair::D2D4),
            "D2D3" => Ok(DetectorPair::D2D3),
            other => Err(Error::UnknownBasis(other.to_string())),
        }
    }
}

/// One analyzer setting × detector pair count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoincidenceRow {
    pub setting_q1: Basis,
    pub setting_q4: Basis,
    pub detector_pair: DetectorPair,
    pub count: u64,
}

/// A set of coincidence rows; settings are unique per detector pair.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CoincidenceTable {
    pub rows: Vec<CoincidenceRow>,
}

impl CoincidenceTable {
    pub fn new(rows: Vec<CoincidenceRow>) -> Self {
        Self { rows }
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn total_counts(&self) -> u64 {
        self.rows.iter().map(|r| r.count).sum()
    }

    /// Counts for a single detector pair, keyed by analyzer setting.
    pub fn counts_for_pair(&self, pair: DetectorPair) -> BTreeMap<(Basis, Basis), u64> {
        self.rows
            .iter()
            .filter(|r| r.detector_pair == pair)
            .map(|r| ((r.setting_q1, r.setting_q4), r.count))
            .collect()
    }

    pub fn to_csv_string(&self) -> Result<String> {
        let mut writer = csv::Writer::from_writer(Vec::new());
        for row in &self.rows {
            writer.serialize(row)?;
        }
        let bytes = writer.into_inner().map_err(|e| Error::Io(e.into_error()))?;
        Ok(String::from_utf8(bytes).expect("csv output is ascii"))
    }

    pub fn from_csv_str(data: &str) -> Result<Self> {
        let mut reader = csv::Reader::from_reader(data.as_bytes());
        let mut rows = Vec::new();
        for record in reader.deserialize() {
            rows.push(record?);
        }
        Ok(Self { rows })
    }

    pub fn to_json_string(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.rows)?)
    }

    pub fn from_json_str(data: &str) -> Result<Self> {
        Ok(Self {
            rows: serde_json::from_str(data)?,
        })
    }

    pub fn write_csv(&self, path: &std::path::Path) -> Result<()> {
        std::fs::write(path, self.to_csv_string()?)?;
        Ok(())
    }

    pub fn read_csv(path: &std::path::Path) -> Result<Self> {
        Self::from_csv_str(&std::fs::read_to_string(path)?)
    }

    pub fn write_json(&self, path: &std::path::Path) -> Result<()> {
        std::fs::write(path, self.to_json_string()?)?;
        Ok(())
    }

    pub fn read_json(path: &std::path::Path) -> Result<Self> {
        Self::from_json_str(&std::fs::read_to_string(path)?)
    }
}
