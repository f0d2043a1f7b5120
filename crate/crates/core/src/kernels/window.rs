use serde::{Deserialize, Serialize};

use super::testfn::TestFunction;
use crate::error::{Error, Result};

/// Resolution `L` and center `τ` of the smoothed counting window.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct WindowParams {
    pub l: f64,
    pub tau: f64,
}

impl WindowParams {
    pub fn new(l: f64, tau: f64) -> Result<Self> {
        if !(l >= 2.0 && l.is_finite()) {
            return Err(Error::InvalidParameter(format!("window length L must be at least 2, got {l}")));
        }
        if !(tau > 0.0 && tau.is_finite()) {
            return Err(Error::InvalidParameter(format!("window center tau must be positive, got {tau}")));
        }
        Ok(WindowParams { l, tau })
    }

    /// Skips validation; used where `L < 2` is needed for identities.
    pub fn unchecked(l: f64, tau: f64) -> Self {
        WindowParams { l, tau }
    }

    /// Largest geodesic length reached by `ĥ`, namely `A·L`.
    pub fn cutoff(&self, tf: &TestFunction) -> f64 {
        tf.support() * self.l
    }
}

/// `ĥ_{L,τ}(u) = (2/L) f̂(u/L) cos(τu)`.
pub fn hhat_window(tf: &TestFunction, w: &WindowParams, u: f64) -> f64 {
    2.0 / w.l * tf.fhat(u / w.l) * (w.tau * u).cos()
}

/// `h_{L,τ}(r) = f(L(r-τ)) + f(L(r+τ))`.
pub fn h_window(tf: &TestFunction, w: &WindowParams, r: f64) -> f64 {
    tf.f(w.l * (r - w.tau)) + tf.f(w.l * (r + w.tau))
}
