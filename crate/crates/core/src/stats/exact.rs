use std::collections::BTreeMap;

use num_complex::Complex64;

use super::geometric::{geometric_terms, GeometricTerm};
use super::OperatorKind;
use crate::error::Result;
use crate::flux::FluxIndex;
use crate::kernels::quad::pairwise_sum;
use crate::kernels::{TestFunction, WindowParams};
use crate::spectrum::LengthSpectrum;

/// Geometric coefficients summed over terms whose holonomies `n·[γ]` agree
/// modulo `q` (exactly, for `q = ∞`). Characters of `ν_q` separate these
/// residues, which turns θ-moments into finite sums over groups.
#[derive(Clone, Debug, PartialEq)]
pub struct ResidueGroups {
    pub q: FluxIndex,
    pub genus: usize,
    pub groups: BTreeMap<Vec<i64>, f64>,
}

impl ResidueGroups {
    pub fn from_terms(terms: &[GeometricTerm], q: FluxIndex, genus: usize) -> Self {
        let mut buckets: BTreeMap<Vec<i64>, Vec<f64>> = BTreeMap::new();
        for t in terms {
            buckets.entry(residue(t.holonomy.entries(), q)).or_default().push(t.coefficient);
        }
        let groups = buckets.into_iter().map(|(k, v)| (k, pairwise_sum(&v))).collect();
        ResidueGroups { q, genus, groups }
    }

    pub fn build(
        spec: &LengthSpectrum,
        q: FluxIndex,
        tf: &TestFunction,
        w: &WindowParams,
        op: &OperatorKind,
    ) -> Result<Self> {
        op.check_flux(q)?;
        let terms = geometric_terms(spec, tf, w, op)?;
        let genus = spec.genus().unwrap_or(0);
        Ok(Self::from_terms(&terms, q, genus))
    }

    /// Coefficient sum of the group of zero holonomy.
    pub fn mean(&self) -> f64 {
        self.groups.iter().find(|(k, _)| k.iter().all(|&x| x == 0)).map_or(0.0, |(_, &c)| c)
    }

    /// `Σ_{v ≠ 0} |C_v|²`.
    pub fn variance(&self) -> f64 {
        let squares: Vec<f64> =
            self.groups.iter().filter(|(k, _)| k.iter().any(|&x| x != 0)).map(|(_, &c)| c * c).collect();
        pairwise_sum(&squares)
    }
}

fn residue(v: &[i64], q: FluxIndex) -> Vec<i64> {
    match q {
        FluxIndex::Finite(q) => v.iter().map(|&x| x.rem_euclid(q as i64)).collect(),
        FluxIndex::Infinite => v.to_vec(),
    }
}

/// The exact `ν_q`-average of the geometric side: the coefficients of all
/// terms with `n·[γ] ≡ 0`.
pub fn exact_theta_mean(
    spec: &LengthSpectrum,
    q: FluxIndex,
    tf: &TestFunction,
    w: &WindowParams,
    op: &OperatorKind,
) -> Result<Complex64> {
    Ok(Complex64::new(ResidueGroups::build(spec, q, tf, w, op)?.mean(), 0.0))
}

/// The exact `ν_q`-variance `E|Z|² - |EZ|²` of the geometric side. Pairs of
/// terms survive the average exactly when `n₁[γ₁] ≡ n₂[γ₂]`, so the double
/// sum collapses to squared group sums.
pub fn exact_theta_variance(
    spec: &LengthSpectrum,
    q: FluxIndex,
    tf: &TestFunction,
    w: &WindowParams,
    op: &OperatorKind,
) -> Result<f64> {
    Ok(ResidueGroups::build(spec, q, tf, w, op)?.variance())
}
