//! Gaussian random-matrix ensembles and variances of smoothed linear
//! statistics in unfolded coordinates.

mod dense;
mod tridiagonal;

use std::f64::consts::PI;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::flux::flux_rng;
use crate::kernels::quad::pairwise_sum;
use crate::kernels::{EnsembleKind, TestFunction};
use crate::pool::run_with_workers;

pub use dense::dense_eigenvalues;
pub use tridiagonal::{beta_hermite, tridiagonal_eigenvalues};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sampler {
    #[default]
    Tridiagonal,
    Dense,
}

/// One Monte-Carlo experiment on a Gaussian ensemble.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnsembleSpec {
    pub kind: EnsembleKind,
    pub dimension: usize,
    pub replicas: usize,
    /// Window center as a fraction of the semicircle radius.
    pub window_center: f64,
    /// Window width in mean spacings.
    pub window_width: f64,
    pub sampler: Sampler,
}

impl EnsembleSpec {
    pub fn new(kind: EnsembleKind, dimension: usize, replicas: usize, window_width: f64) -> Result<Self> {
        let spec = EnsembleSpec { kind, dimension, replicas, window_center: 0.0, window_width, sampler: Sampler::Tridiagonal };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        if self.dimension < 64 {
            return bad(format!("matrix dimension must be at least 64, got {}", self.dimension));
        }
        if self.replicas < 100 {
            return bad(format!("at least 100 replicas are needed, got {}", self.replicas));
        }
        if !(self.window_center > -1.0 && self.window_center < 1.0) {
            return bad(format!("window center must lie in (-1, 1), got {}", self.window_center));
        }
        if !(self.window_width >= 8.0) {
            return bad(format!("window width must be at least 8 spacings, got {}", self.window_width));
        }
        if self.window_width > self.dimension as f64 / 8.0 {
            return bad(format!(
                "window width {} exceeds the bulk limit N/8 = {}",
                self.window_width,
                self.dimension as f64 / 8.0
            ));
        }
        Ok(())
    }
}

/// Raw eigenvalues of one draw with diagonal variance one, sorted. GSE
/// doublets are reported once.
pub fn sample_eigenvalues<R: Rng + ?Sized>(kind: EnsembleKind, n: usize, sampler: Sampler, rng: &mut R) -> Result<Vec<f64>> {
    match sampler {
        Sampler::Tridiagonal => {
            let (d, e) = beta_hermite(n, kind.beta() as f64, rng);
            tridiagonal_eigenvalues(&d, &e)
        }
        Sampler::Dense => {
            let values = dense_eigenvalues(kind, n, rng);
            Ok(match kind {
                EnsembleKind::Gse => values.iter().step_by(2).copied().collect(),
                _ => values,
            })
        }
    }
}

/// Eigenvalues of one draw scaled so that the limiting density is the
/// semicircle on `[-2, 2]`.
pub fn sample_spectrum(spec: &EnsembleSpec, seed: u64) -> Result<Vec<f64>> {
    spec.validate()?;
    let mut rng = flux_rng(seed, 0);
    scaled_draw(spec, &mut rng)
}

fn scaled_draw<R: Rng + ?Sized>(spec: &EnsembleSpec, rng: &mut R) -> Result<Vec<f64>> {
    let scale = (2.0 / (spec.kind.beta() as f64 * spec.dimension as f64)).sqrt();
    Ok(sample_eigenvalues(spec.kind, spec.dimension, spec.sampler, rng)?.into_iter().map(|x| x * scale).collect())
}

/// Semicircle distribution function on `[-2, 2]`.
pub fn semicircle_cdf(x: f64) -> f64 {
    let x = x.clamp(-2.0, 2.0);
    0.5 + x * (4.0 - x * x).sqrt() / (4.0 * PI) + (x / 2.0).asin() / PI
}

/// `x_i = N·F(λ_i)`; the edges of the support map to `0` and `N`.
pub fn unfold(eigenvalues: &[f64], n: usize) -> Vec<f64> {
    eigenvalues.iter().map(|&x| n as f64 * semicircle_cdf(x)).collect()
}

/// Monte-Carlo variance of the linear statistic, with its standard error.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct VarianceEstimate {
    pub variance: f64,
    pub se: f64,
    pub mean: f64,
    pub replicas: usize,
}

/// Variance over replicas of `S = Σ_i f((x_i - x₀)/W)` for unfolded points
/// `x_i`, where `x₀` is the unfolded window center.
pub fn statistic_variance(spec: &EnsembleSpec, tf: &TestFunction, seed: u64, workers: Option<usize>) -> Result<VarianceEstimate> {
    spec.validate()?;
    let n = spec.dimension;
    let center = n as f64 * semicircle_cdf(2.0 * spec.window_center);
    let job = || {
        (0..spec.replicas)
            .into_par_iter()
            .map(|r| {
                let mut rng = flux_rng(seed, r as u64);
                let values = scaled_draw(spec, &mut rng)?;
                let terms: Vec<f64> =
                    unfold(&values, n).iter().map(|&x| tf.f((x - center) / spec.window_width)).collect();
                Ok(pairwise_sum(&terms))
            })
            .collect::<Result<Vec<f64>>>()
    };
    let stats = run_with_workers(workers, job)??;
    Ok(summarize(&stats))
}

fn summarize(stats: &[f64]) -> VarianceEstimate {
    let n = stats.len() as f64;
    let shift = stats[0];
    let shifted: Vec<f64> = stats.iter().map(|s| s - shift).collect();
    let mean = pairwise_sum(&shifted) / n;
    let squares: Vec<f64> = shifted.iter().map(|s| (s - mean).powi(2)).collect();
    let mean_square = pairwise_sum(&squares) / n;
    let variance = mean_square * n / (n - 1.0);
    let spread: Vec<f64> = squares.iter().map(|s| (s - mean_square).powi(2)).collect();
    let se = (pairwise_sum(&spread) / (n - 1.0) / n).sqrt() * n / (n - 1.0);
    VarianceEstimate { variance, se, mean: shift + mean, replicas: stats.len() }
}
