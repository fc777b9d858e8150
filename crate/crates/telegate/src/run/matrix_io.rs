//! JSON form of reconstructed matrices: `{"dim": d, "re": [[..]], "im": [[..]]}`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::path::Path;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub dim: usize,
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

impl MatrixJson {
    pub fn from_complex(m: &DMatrix<Complex64>) -> Self {
        let dim = m.nrows();
        let grab = |f: fn(&Complex64) -> f64| -> Vec<Vec<f64>> {
            (0..dim)
                .map(|r| (0..dim).map(|c| f(&m[(r, c)])).collect())
                .collect()
        };
        Self {
            dim,
            re: grab(|z| z.re),
            im: grab(|z| z.im),
        }
    }

    pub fn to_complex(&self) -> Result<DMatrix<Complex64>> {
        let d = self.dim;
        let shape_ok = |rows: &Vec<Vec<f64>>| rows.len() == d && rows.iter().all(|r| r.len() == d);
        if !shape_ok(&self.re) || !shape_ok(&self.im) {
            return Err(Error::DimensionMismatch(
                "matrix JSON arrays do not match dim".into(),
            ));
        }
        Ok(DMatrix::from_fn(d, d, |r, c| {
            Complex64::new(self.re[r][c], self.im[r][c])
        }))
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, serde_json::to_string_pretty(self)?)?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self> {
        Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::{DensityMatrix, PureState};
    use rand::SeedableRng;

    #[test]
    fn matrices_round_trip_through_json() {
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(113);
        let rho = DensityMatrix::from_pure(&PureState::haar_random(2, &mut rng));
        let json = MatrixJson::from_complex(rho.elements());
        let text = serde_json::to_string(&json).unwrap();
        let back: MatrixJson = serde_json::from_str(&text).unwrap();
        assert!((back.to_complex().unwrap() - rho.elements()).norm() < 1e-15);
    }
}
