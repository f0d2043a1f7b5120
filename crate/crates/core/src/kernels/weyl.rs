use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::quad::integrate;
use super::testfn::TestFunction;
use super::window::{h_window, WindowParams};
use crate::error::{Error, Result};

/// Which trace formula is used: the scalar Laplacian or the Dirac operator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpectralKind {
    Laplace,
    Dirac,
}

impl fmt::Display for SpectralKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpectralKind::Laplace => write!(f, "laplace"),
            SpectralKind::Dirac => write!(f, "dirac"),
        }
    }
}

impl FromStr for SpectralKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "laplace" => Ok(SpectralKind::Laplace),
            "dirac" => Ok(SpectralKind::Dirac),
            _ => Err(Error::InvalidParameter(format!("operator must be 'laplace' or 'dirac', got '{s}'"))),
        }
    }
}

/// Plancherel weight `r·tanh(πr)` or `r·coth(πr)`.
pub fn plancherel_weight(kind: SpectralKind, r: f64) -> f64 {
    let x = PI * r.abs();
    match kind {
        SpectralKind::Laplace => r.abs() * x.tanh(),
        SpectralKind::Dirac if x < 1e-4 => (1.0 + x * x / 3.0) / PI,
        SpectralKind::Dirac => r.abs() / x.tanh(),
    }
}

/// `(g-1) ∫ h_{L,τ}(r) w(r) dr` with `w` the Plancherel weight of `kind`.
///
/// The integral is truncated at `|r| = τ + X/L`, where `X` is the smallest
/// grid point at which the tabulated tail moments of `f` certify a neglected
/// contribution below a quarter of the tolerance.
pub fn weyl_term(tf: &TestFunction, w: &WindowParams, genus: usize, kind: SpectralKind) -> Result<f64> {
    if genus <= 1 || tf.amplitude() == 0.0 {
        return Ok(0.0);
    }
    let prefactor = 2.0 * (genus as f64 - 1.0);
    let tol = tf.quadrature_tol();
    let radius = truncation_radius(tf, w, prefactor, tol)?;
    let panels = (radius * tf.support() * w.l / PI).ceil() as usize + 4;
    let integral = integrate(|r| h_window(tf, w, r) * plancherel_weight(kind, r), 0.0, radius, tol / (2.0 * prefactor), panels)?;
    Ok(prefactor * integral.value)
}

fn truncation_radius(tf: &TestFunction, w: &WindowParams, prefactor: f64, tol: f64) -> Result<f64> {
    let Some(_) = tf.tail_bounds(0.0) else {
        return Err(Error::QuadratureFailure(format!(
            "the {} family has no finite first moment, so the integration tail cannot be certified",
            tf.family()
        )));
    };
    let (l, tau) = (w.l, w.tau);
    let coth_slack = 1.0 + 1.0 / (PI * tau).tanh();
    let extent = tf.extent();
    let mut x = 1.0;
    while x <= extent {
        let (m0, m1) = tf.tail_bounds(x).expect("checked above");
        let (_, m1_far) = tf.tail_bounds(x + 2.0 * l * tau).expect("checked above");
        let bound = prefactor * coth_slack / l * (m1 / l + tau * m0 + m1_far / l);
        if bound < tol / 4.0 {
            return Ok(tau + x / l);
        }
        x *= 1.1;
    }
    Err(Error::QuadratureFailure(format!(
        "tail of the Weyl integral exceeds {tol:e} even at the tabulation extent {extent}"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn genus_one_is_zero() {
        let tf = TestFunction::bump(1.0).unwrap();
        let w = WindowParams::new(4.0, 3.0).unwrap();
        assert_eq!(weyl_term(&tf, &w, 1, SpectralKind::Laplace).unwrap(), 0.0);
    }

    #[test]
    fn dirac_weight_limit() {
        assert!((plancherel_weight(SpectralKind::Dirac, 0.0) - 1.0 / PI).abs() < 1e-16);
        let r = 2e-4;
        let direct = r / (PI * r).tanh();
        assert!((plancherel_weight(SpectralKind::Dirac, r) - direct).abs() < 1e-15);
        assert_eq!(plancherel_weight(SpectralKind::Laplace, 0.0), 0.0);
    }

    #[test]
    fn fejer_tail_is_rejected() {
        let tf = TestFunction::fejer(1.0).unwrap();
        let w = WindowParams::new(4.0, 3.0).unwrap();
        assert!(matches!(weyl_term(&tf, &w, 2, SpectralKind::Laplace), Err(Error::QuadratureFailure(_))));
    }

    #[test]
    fn dirac_exceeds_laplace() {
        let tf = TestFunction::bump(1.0).unwrap();
        let w = WindowParams::new(4.0, 1.0).unwrap();
        let lap = weyl_term(&tf, &w, 2, SpectralKind::Laplace).unwrap();
        let dir = weyl_term(&tf, &w, 2, SpectralKind::Dirac).unwrap();
        assert!(dir > lap && lap > 0.0);
    }
}
