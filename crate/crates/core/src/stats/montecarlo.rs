use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::exact::ResidueGroups;
use super::{ensemble_for, OperatorKind};
use crate::error::{Error, Result};
use crate::flux::{flux_rng, root_of_unity, sample_flux, unit_phase, FluxIndex, FluxSpec, FluxVector};
use crate::kernels::quad::pairwise_sum;
use crate::kernels::{i_fq, rmt_density, EnsembleKind, SpectralKind, TestFunction, WindowParams};
use crate::pool::run_with_workers;
use crate::spectrum::LengthSpectrum;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct McOptions {
    pub samples: usize,
    pub seed: u64,
    pub workers: Option<usize>,
    /// Draws per random stream; fixes the stream layout independently of
    /// the number of workers.
    pub chunk: usize,
}

impl McOptions {
    pub fn new(samples: usize, seed: u64) -> Self {
        McOptions { samples, seed, workers: None, chunk: 1024 }
    }
}

/// Evaluates the geometric side at many flux vectors from its residue groups.
#[derive(Clone, Debug)]
pub struct FluxSampler {
    spec: FluxSpec,
    keys: Vec<Vec<i64>>,
    coefficients: Vec<f64>,
    max_entry: i64,
    roots: Vec<Complex64>,
}

impl FluxSampler {
    pub fn new(groups: &ResidueGroups) -> Result<Self> {
        let spec = FluxSpec::new(groups.q, groups.genus)?;
        let keys: Vec<Vec<i64>> = groups.groups.keys().cloned().collect();
        let coefficients = groups.groups.values().copied().collect();
        let max_entry = keys.iter().flatten().map(|x| x.abs()).max().unwrap_or(0);
        let roots = match groups.q {
            FluxIndex::Finite(q) => (0..q as u64).map(|r| root_of_unity(r, q as u64)).collect(),
            FluxIndex::Infinite => Vec::new(),
        };
        Ok(FluxSampler { spec, keys, coefficients, max_entry, roots })
    }

    pub fn flux_spec(&self) -> FluxSpec {
        self.spec
    }

    /// `Σ_v C_v e(θ·v)`.
    pub fn eval(&self, theta: &FluxVector) -> Complex64 {
        let exact = match (self.spec.q, theta.denominator(), theta.numerators()) {
            (FluxIndex::Finite(q), Some(d), Some(nums)) if d == q => Some(nums),
            _ => None,
        };
        let mut total = Complex64::new(0.0, 0.0);
        match exact {
            Some(nums) => {
                let q = self.roots.len() as i64;
                for (key, &c) in self.keys.iter().zip(&self.coefficients) {
                    let dot: i64 = key.iter().zip(nums).map(|(&v, &m)| v * m as i64).sum();
                    total += c * self.roots[dot.rem_euclid(q) as usize];
                }
            }
            None => {
                let span = self.max_entry as usize;
                let tables: Vec<Vec<Complex64>> = theta
                    .theta()
                    .iter()
                    .map(|&t| (0..=2 * span).map(|j| unit_phase(t * (j as f64 - span as f64))).collect())
                    .collect();
                for (key, &c) in self.keys.iter().zip(&self.coefficients) {
                    let mut z = Complex64::new(c, 0.0);
                    for (table, &v) in tables.iter().zip(key) {
                        if v != 0 {
                            z *= table[(v + self.max_entry) as usize];
                        }
                    }
                    total += z;
                }
            }
        }
        total
    }

    /// Values of the geometric side at `opts.samples` independent draws
    /// from `ν_q`, in a fixed order.
    pub fn draw(&self, opts: &McOptions) -> Result<Vec<Complex64>> {
        let chunk = opts.chunk.max(1);
        let chunks = opts.samples.div_ceil(chunk);
        let job = || {
            (0..chunks)
                .into_par_iter()
                .map(|k| {
                    let mut rng = flux_rng(opts.seed, k as u64);
                    let count = chunk.min(opts.samples - k * chunk);
                    (0..count).map(|_| self.eval(&sample_flux(&self.spec, &mut rng))).collect::<Vec<_>>()
                })
                .collect::<Vec<_>>()
        };
        Ok(run_with_workers(opts.workers, job)?.into_iter().flatten().collect())
    }
}

/// Sample moments of complex draws. Values are shifted by the first draw,
/// so a constant sample has exactly zero variance.
#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) struct SampleMoments {
    pub mean: Complex64,
    pub mean_se: f64,
    pub variance: f64,
    pub variance_se: f64,
}

pub(crate) fn sample_moments(values: &[Complex64]) -> SampleMoments {
    let n = values.len() as f64;
    let shift = values[0];
    let shifted: Vec<Complex64> = values.iter().map(|&z| z - shift).collect();
    let mean_shift = Complex64::new(
        pairwise_sum(&shifted.iter().map(|z| z.re).collect::<Vec<_>>()),
        pairwise_sum(&shifted.iter().map(|z| z.im).collect::<Vec<_>>()),
    ) / n;
    let squares: Vec<f64> = shifted.iter().map(|&z| (z - mean_shift).norm_sqr()).collect();
    let variance = pairwise_sum(&squares) / (n - 1.0);
    let mean_square = pairwise_sum(&squares) / n;
    let spread: Vec<f64> = squares.iter().map(|&s| (s - mean_square).powi(2)).collect();
    let fourth = pairwise_sum(&spread) / (n - 1.0);
    SampleMoments {
        mean: shift + mean_shift,
        mean_se: (variance / n).sqrt(),
        variance,
        variance_se: (fourth / n).sqrt() * n / (n - 1.0),
    }
}

/// Exact and sampled θ-moments of the geometric side for one configuration,
/// with the large-genus reference value for comparison.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StatReport {
    pub q: FluxIndex,
    pub operator: SpectralKind,
    pub halve_counting: bool,
    pub family: String,
    pub support: f64,
    pub l: f64,
    pub tau: f64,
    /// Real and imaginary parts.
    pub exact_mean: [f64; 2],
    pub exact_variance: f64,
    pub mc_mean: [f64; 2],
    pub mc_mean_se: f64,
    pub mc_variance: f64,
    pub mc_variance_se: f64,
    pub reference_ensemble: EnsembleKind,
    pub rmt_density: f64,
    pub ifq: f64,
    /// Asymptotic large-genus prediction `Σ²_β(f) + |I_{f,q}|²`, scaled like
    /// the counting function. Heuristic at genus two.
    pub reference_variance: f64,
    pub cutoff_nl: f64,
    pub term_count: usize,
    pub sample_count: usize,
    pub seed: u64,
    /// Set when every draw gives the same value (`q = 1`).
    pub degenerate: bool,
}

impl StatReport {
    /// `|exact - mc| ≤ k·SE` for the mean; exact equality when the SE is 0.
    pub fn mean_agrees(&self, k: f64) -> bool {
        let diff = Complex64::new(self.exact_mean[0] - self.mc_mean[0], self.exact_mean[1] - self.mc_mean[1]).norm();
        within(diff, k, self.mc_mean_se, self.exact_mean[0].abs() + self.exact_mean[1].abs())
    }

    pub fn variance_agrees(&self, k: f64) -> bool {
        within((self.exact_variance - self.mc_variance).abs(), k, self.mc_variance_se, self.exact_variance)
    }
}

fn within(diff: f64, k: f64, se: f64, scale: f64) -> bool {
    if se == 0.0 {
        diff <= 1e-12 * (1.0 + scale)
    } else {
        diff <= k * se
    }
}

/// The reference ensemble for an operator and flux denominator.
pub fn reference_ensemble(op: &OperatorKind, q: FluxIndex) -> EnsembleKind {
    ensemble_for(op, q)
}

/// Samples `θ ~ ν_q` and compares sampled moments of the geometric side with
/// the exact ones.
pub fn mc_flux_experiment(
    spec: &LengthSpectrum,
    flux: &FluxSpec,
    tf: &TestFunction,
    w: &WindowParams,
    op: &OperatorKind,
    opts: &McOptions,
) -> Result<StatReport> {
    if opts.samples < 2 {
        return Err(Error::InvalidParameter(format!("at least two samples are needed, got {}", opts.samples)));
    }
    let groups = ResidueGroups::build(spec, flux.q, tf, w, op)?;
    if let Some(genus) = spec.genus() {
        if genus != flux.genus {
            return Err(Error::InvalidFluxSpec(format!(
                "flux torus has genus {} but the spectrum has genus {genus}",
                flux.genus
            )));
        }
    }
    let groups = ResidueGroups { genus: flux.genus, ..groups };
    let sampler = FluxSampler::new(&groups)?;
    let values = sampler.draw(opts)?;
    let moments = sample_moments(&values);
    let ensemble = ensemble_for(op, flux.q);
    let density = rmt_density(tf, ensemble)?;
    let ifq = i_fq(tf, w, flux.q)?.value;
    let scaled_ifq = op.counting_factor() * ifq;
    Ok(StatReport {
        q: flux.q,
        operator: op.kind,
        halve_counting: op.halve_counting,
        family: tf.family_tag(),
        support: tf.support(),
        l: w.l,
        tau: w.tau,
        exact_mean: [groups.mean(), 0.0],
        exact_variance: groups.variance(),
        mc_mean: [moments.mean.re, moments.mean.im],
        mc_mean_se: moments.mean_se,
        mc_variance: moments.variance,
        mc_variance_se: moments.variance_se,
        reference_ensemble: ensemble,
        rmt_density: density,
        ifq,
        reference_variance: density + scaled_ifq * scaled_ifq,
        cutoff_nl: w.cutoff(tf),
        term_count: groups.groups.len(),
        sample_count: opts.samples,
        seed: opts.seed,
        degenerate: moments.variance == 0.0,
    })
}
