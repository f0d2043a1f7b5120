//! The geometric side of the twisted trace formulas and its flux statistics.

mod exact;
mod geometric;
mod montecarlo;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::flux::FluxIndex;
use crate::kernels::{EnsembleKind, SpectralKind};

pub use exact::{exact_theta_mean, exact_theta_variance, ResidueGroups};
pub use geometric::{counting_breakdown, counting_estimate, geometric_side, geometric_terms, CountingBreakdown, GeometricTerm};
pub use montecarlo::{mc_flux_experiment, reference_ensemble, FluxSampler, McOptions, StatReport};

/// Operator whose spectrum is being counted. Dirac operators with a real
/// character have Kramers-degenerate spectra and count each doublet once.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperatorKind {
    pub kind: SpectralKind,
    pub halve_counting: bool,
}

impl OperatorKind {
    pub fn laplace() -> Self {
        OperatorKind { kind: SpectralKind::Laplace, halve_counting: false }
    }

    /// The operator used with flux denominator `q`. Dirac operators need an
    /// even or infinite `q`.
    pub fn for_flux(kind: SpectralKind, q: FluxIndex) -> Result<Self> {
        match kind {
            SpectralKind::Laplace => Ok(Self::laplace()),
            SpectralKind::Dirac if !q.is_even_or_infinite() => Err(Error::InvalidFluxSpec(format!(
                "the Dirac operator needs an even or infinite q, got q = {q}"
            ))),
            SpectralKind::Dirac => Ok(OperatorKind { kind, halve_counting: q == FluxIndex::Finite(2) }),
        }
    }

    fn check_flux(&self, q: FluxIndex) -> Result<()> {
        let expected = Self::for_flux(self.kind, q)?;
        if expected != *self {
            return Err(Error::InvalidFluxSpec(format!(
                "operator {self:?} does not match flux denominator q = {q}"
            )));
        }
        Ok(())
    }

    /// Factor applied to every counted quantity.
    pub fn counting_factor(&self) -> f64 {
        if self.halve_counting {
            0.5
        } else {
            1.0
        }
    }
}

/// The limiting ensemble whose density is the reference variance.
pub(crate) fn ensemble_for(op: &OperatorKind, q: FluxIndex) -> EnsembleKind {
    match (op.kind, q) {
        (SpectralKind::Laplace, FluxIndex::Finite(1 | 2)) => EnsembleKind::Goe,
        (SpectralKind::Dirac, FluxIndex::Finite(2)) => EnsembleKind::Gse,
        _ => EnsembleKind::Gue,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dirac_needs_even_q() {
        assert!(matches!(
            OperatorKind::for_flux(SpectralKind::Dirac, FluxIndex::Finite(3)),
            Err(Error::InvalidFluxSpec(_))
        ));
        assert!(OperatorKind::for_flux(SpectralKind::Dirac, FluxIndex::Finite(2)).unwrap().halve_counting);
        assert!(!OperatorKind::for_flux(SpectralKind::Dirac, FluxIndex::Finite(4)).unwrap().halve_counting);
        assert!(!OperatorKind::for_flux(SpectralKind::Dirac, FluxIndex::Infinite).unwrap().halve_counting);
        assert!(!OperatorKind::for_flux(SpectralKind::Laplace, FluxIndex::Finite(2)).unwrap().halve_counting);
    }

    #[test]
    fn reference_ensembles() {
        let lap = OperatorKind::laplace();
        let dirac = |q| OperatorKind::for_flux(SpectralKind::Dirac, q).unwrap();
        assert_eq!(ensemble_for(&lap, FluxIndex::Finite(1)), EnsembleKind::Goe);
        assert_eq!(ensemble_for(&lap, FluxIndex::Finite(2)), EnsembleKind::Goe);
        assert_eq!(ensemble_for(&lap, FluxIndex::Finite(3)), EnsembleKind::Gue);
        assert_eq!(ensemble_for(&lap, FluxIndex::Infinite), EnsembleKind::Gue);
        assert_eq!(ensemble_for(&dirac(FluxIndex::Finite(2)), FluxIndex::Finite(2)), EnsembleKind::Gse);
        assert_eq!(ensemble_for(&dirac(FluxIndex::Finite(4)), FluxIndex::Finite(4)), EnsembleKind::Gue);
        assert_eq!(ensemble_for(&dirac(FluxIndex::Infinite), FluxIndex::Infinite), EnsembleKind::Gue);
    }
}
