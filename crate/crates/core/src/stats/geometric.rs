use num_complex::Complex64;

use super::OperatorKind;
use crate::error::Result;
use crate::flux::{char_eval, FluxVector};
use crate::group::HomologyVector;
use crate::kernels::{hhat_window, weyl_term, SpectralKind, TestFunction, WindowParams};
use crate::kernels::quad::pairwise_sum;
use crate::spectrum::LengthSpectrum;

/// One (class, power) contribution to the geometric side, without its
/// character value.
#[derive(Clone, Debug, PartialEq)]
pub struct GeometricTerm {
    pub class_index: usize,
    pub power: u32,
    pub total_length: f64,
    /// `[σ^n] ℓ ĥ(nℓ) / (2 sinh(nℓ/2))`, halved when counting is halved.
    pub coefficient: f64,
    /// `n·[γ]`.
    pub holonomy: HomologyVector,
}

/// Every term with `nℓ < A·L`, in spectrum order.
pub fn geometric_terms(
    spec: &LengthSpectrum,
    tf: &TestFunction,
    w: &WindowParams,
    op: &OperatorKind,
) -> Result<Vec<GeometricTerm>> {
    let cutoff = w.cutoff(tf);
    let powers = spec.power_extend(cutoff)?;
    Ok(powers
        .into_iter()
        .filter(|p| p.total_length < cutoff)
        .map(|p| {
            let class = &spec.classes[p.class_index];
            let nl = p.total_length;
            let sign = match op.kind {
                SpectralKind::Dirac if class.sigma < 0 && p.power % 2 == 1 => -1.0,
                _ => 1.0,
            };
            let coefficient =
                op.counting_factor() * sign * class.length * hhat_window(tf, w, nl) / (2.0 * (nl / 2.0).sinh());
            GeometricTerm {
                class_index: p.class_index,
                power: p.power,
                total_length: nl,
                coefficient,
                holonomy: class.homology.scaled(p.power as i64),
            }
        })
        .collect())
}

/// `Σ_{γ,n} [σ_γ^n] ℓ_γ ĥ_{L,τ}(nℓ_γ) e(nθ·[γ]) / (2 sinh(nℓ_γ/2))`, the
/// oscillating part of the smoothed count.
pub fn geometric_side(
    spec: &LengthSpectrum,
    theta: &FluxVector,
    tf: &TestFunction,
    w: &WindowParams,
    op: &OperatorKind,
) -> Result<Complex64> {
    let terms = geometric_terms(spec, tf, w, op)?;
    let values: Vec<Complex64> =
        terms.iter().map(|t| t.coefficient * char_eval(theta, &t.holonomy, 1)).collect();
    let re: Vec<f64> = values.iter().map(|z| z.re).collect();
    let im: Vec<f64> = values.iter().map(|z| z.im).collect();
    Ok(Complex64::new(pairwise_sum(&re), pairwise_sum(&im)))
}

/// The trace-formula prediction for `Σ_j h_{L,τ}(r_j)` split into its parts.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CountingBreakdown {
    pub weyl: f64,
    pub oscillating: Complex64,
}

impl CountingBreakdown {
    pub fn total(&self) -> f64 {
        self.weyl + self.oscillating.re
    }
}

pub fn counting_breakdown(
    spec: &LengthSpectrum,
    theta: &FluxVector,
    tf: &TestFunction,
    w: &WindowParams,
    op: &OperatorKind,
    genus: usize,
) -> Result<CountingBreakdown> {
    let oscillating = geometric_side(spec, theta, tf, w, op)?;
    let weyl = op.counting_factor() * weyl_term(tf, w, genus, op.kind)?;
    Ok(CountingBreakdown { weyl, oscillating })
}

/// Weyl term plus the real part of the geometric side.
pub fn counting_estimate(
    spec: &LengthSpectrum,
    theta: &FluxVector,
    tf: &TestFunction,
    w: &WindowParams,
    op: &OperatorKind,
    genus: usize,
) -> Result<f64> {
    Ok(counting_breakdown(spec, theta, tf, w, op, genus)?.total())
}
