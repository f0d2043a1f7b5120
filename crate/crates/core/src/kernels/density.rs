use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::quad::integrate;
use super::testfn::TestFunction;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EnsembleKind {
    Goe,
    Gue,
    Gse,
}

impl EnsembleKind {
    /// Dyson index β.
    pub fn beta(self) -> u32 {
        match self {
            EnsembleKind::Goe => 1,
            EnsembleKind::Gue => 2,
            EnsembleKind::Gse => 4,
        }
    }

    /// Weight `c` in `Σ² = c ∫_0^A x f̂(x)^2 dx`.
    fn weight(self) -> f64 {
        match self {
            EnsembleKind::Goe => 4.0,
            EnsembleKind::Gue => 2.0,
            EnsembleKind::Gse => 1.0,
        }
    }
}

impl fmt::Display for EnsembleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            EnsembleKind::Goe => "goe",
            EnsembleKind::Gue => "gue",
            EnsembleKind::Gse => "gse",
        };
        f.write_str(name)
    }
}

impl FromStr for EnsembleKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "goe" => Ok(EnsembleKind::Goe),
            "gue" => Ok(EnsembleKind::Gue),
            "gse" => Ok(EnsembleKind::Gse),
            _ => Err(Error::InvalidParameter(format!("ensemble must be goe, gue or gse, got '{s}'"))),
        }
    }
}

/// Limiting number variance of the linear statistic of `f`:
/// `∫ 2|x| f̂²` (GOE), `∫ |x| f̂²` (GUE) or `∫ |x|/2 f̂²` (GSE).
pub fn rmt_density(tf: &TestFunction, kind: EnsembleKind) -> Result<f64> {
    if tf.amplitude() == 0.0 {
        return Ok(0.0);
    }
    let base = integrate(|x| x * tf.fhat(x).powi(2), 0.0, tf.support(), tf.quadrature_tol() * 1e-3, 8)?;
    Ok(kind.weight() * base.value)
}
