use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default absolute tolerance for quadratures and tabulated evaluations.
pub const DEFAULT_TOLERANCE: f64 = 1e-10;

const GRID_STEPS_PER_UNIT: f64 = 100.0;
const GRID_EXTENT: f64 = 2000.0;
const FFT_LEN: usize = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    /// `f̂(u) = exp(-1/(1-(u/A)^2))` on `|u| < A`: smooth and compactly supported.
    Bump,
    /// `f̂(u) = (1-|u|/A)_+`: only continuous, kept for cross-checks.
    Fejer,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Bump => write!(f, "bump"),
            Family::Fejer => write!(f, "fejer"),
        }
    }
}

/// `f(x)` and `f'(x)` on the uniform grid `x_k = k·step`, `0 ≤ x_k ≤ extent`.
struct Table {
    step: f64,
    values: Vec<f64>,
    slopes: Vec<f64>,
    /// `∫_{x_k}^{extent} |f|` and `∫_{x_k}^{extent} x|f|` by the trapezoid rule.
    tail_abs: Vec<f64>,
    tail_first_moment: Vec<f64>,
}

/// An even test function `f` given through its compactly supported Fourier
/// transform, with `f(r) = ∫ f̂(u) e^{iur} du`.
#[derive(Clone)]
pub struct TestFunction {
    family: Family,
    support: f64,
    amplitude: f64,
    tolerance: f64,
    table: Option<Arc<Table>>,
}

impl fmt::Debug for TestFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TestFunction")
            .field("family", &self.family)
            .field("support", &self.support)
            .field("amplitude", &self.amplitude)
            .field("tolerance", &self.tolerance)
            .finish()
    }
}

impl TestFunction {
    /// Smooth bump with support radius `a`.
    pub fn bump(a: f64) -> Result<Self> {
        Self::bump_scaled(a, 1.0)
    }

    /// `amplitude` times the bump; amplitude zero gives `f ≡ 0`.
    pub fn bump_scaled(a: f64, amplitude: f64) -> Result<Self> {
        check_support(a)?;
        let mut tf = TestFunction { family: Family::Bump, support: a, amplitude, tolerance: DEFAULT_TOLERANCE, table: None };
        tf.table = Some(Arc::new(tf.tabulate()));
        Ok(tf)
    }

    /// Triangular transform with closed-form `f(r) = 2(1-cos(Ar))/(A r^2)`.
    pub fn fejer(a: f64) -> Result<Self> {
        check_support(a)?;
        Ok(TestFunction { family: Family::Fejer, support: a, amplitude: 1.0, tolerance: DEFAULT_TOLERANCE, table: None })
    }

    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn family_tag(&self) -> String {
        self.family.to_string()
    }

    pub fn support(&self) -> f64 {
        self.support
    }

    pub fn amplitude(&self) -> f64 {
        self.amplitude
    }

    pub fn quadrature_tol(&self) -> f64 {
        self.tolerance
    }

    pub fn fhat(&self, u: f64) -> f64 {
        let t = u.abs() / self.support;
        if t >= 1.0 {
            return 0.0;
        }
        match self.family {
            Family::Bump => self.amplitude * (-1.0 / (1.0 - t * t)).exp(),
            Family::Fejer => self.amplitude * (1.0 - t),
        }
    }

    pub fn f(&self, r: f64) -> f64 {
        let x = r.abs();
        match self.family {
            Family::Fejer => {
                let a = self.support;
                if x * a < 1e-4 {
                    let z = a * x;
                    self.amplitude * a * (1.0 - z * z / 12.0)
                } else {
                    self.amplitude * 2.0 * (1.0 - (a * x).cos()) / (a * x * x)
                }
            }
            Family::Bump => {
                let table = self.table.as_ref().expect("bump functions are tabulated");
                interpolate(table, x)
            }
        }
    }

    /// Largest argument at which `f` is tabulated; beyond it `|f|` is
    /// negligible and treated as zero.
    pub fn extent(&self) -> f64 {
        match &self.table {
            Some(t) => t.step * (t.values.len() - 1) as f64,
            None => f64::INFINITY,
        }
    }

    /// Upper bounds for `(∫_x^∞ |f|, ∫_x^∞ t|f(t)| dt)`; `None` when the
    /// first moment diverges.
    pub fn tail_bounds(&self, x: f64) -> Option<(f64, f64)> {
        let x = x.max(0.0);
        match (&self.table, self.family) {
            (Some(t), _) => {
                let k = ((x / t.step).floor() as usize).min(t.values.len() - 1);
                Some((2.0 * t.tail_abs[k], 2.0 * t.tail_first_moment[k]))
            }
            (None, Family::Fejer) => None,
            (None, Family::Bump) => unreachable!("bump functions are tabulated"),
        }
    }

    fn tabulate(&self) -> Table {
        let a = self.support;
        let step = 1.0 / (GRID_STEPS_PER_UNIT * a);
        let count = (GRID_EXTENT * GRID_STEPS_PER_UNIT).round() as usize + 1;
        let n = FFT_LEN;
        let du = 2.0 * PI / (n as f64 * step);
        let last = ((a / du).ceil() as usize).min(n / 2 - 1);
        let mut values = vec![Complex64::new(0.0, 0.0); n];
        let mut slopes = vec![Complex64::new(0.0, 0.0); n];
        for j in 0..=last {
            let u = j as f64 * du;
            let c = self.fhat(u) * du;
            values[j] = Complex64::new(c, 0.0);
            slopes[j] = Complex64::new(0.0, u * c);
            if j > 0 {
                values[n - j] = Complex64::new(c, 0.0);
                slopes[n - j] = Complex64::new(0.0, -u * c);
            }
        }
        let mut planner = FftPlanner::<f64>::new();
        let fft = planner.plan_fft_inverse(n);
        fft.process(&mut values);
        fft.process(&mut slopes);
        let values: Vec<f64> = values[..count].iter().map(|z| z.re).collect();
        let slopes: Vec<f64> = slopes[..count].iter().map(|z| z.re).collect();

        let mut tail_abs = vec![0.0; count];
        let mut tail_first_moment = vec![0.0; count];
        for k in (0..count - 1).rev() {
            let (x0, x1) = (k as f64 * step, (k + 1) as f64 * step);
            let (f0, f1) = (values[k].abs(), values[k + 1].abs());
            tail_abs[k] = tail_abs[k + 1] + 0.5 * step * (f0 + f1);
            tail_first_moment[k] = tail_first_moment[k + 1] + 0.5 * step * (x0 * f0 + x1 * f1);
        }
        Table { step, values, slopes, tail_abs, tail_first_moment }
    }
}

fn check_support(a: f64) -> Result<()> {
    if !(a > 0.0 && a.is_finite()) {
        return Err(Error::InvalidParameter(format!("support radius must be positive, got {a}")));
    }
    Ok(())
}

/// Cubic Hermite interpolation between tabulated values and slopes.
fn interpolate(t: &Table, x: f64) -> f64 {
    let pos = x / t.step;
    let k = pos.floor() as usize;
    if k + 1 >= t.values.len() {
        return 0.0;
    }
    let s = pos - k as f64;
    let (y0, y1) = (t.values[k], t.values[k + 1]);
    let (d0, d1) = (t.slopes[k] * t.step, t.slopes[k + 1] * t.step);
    let s2 = s * s;
    let s3 = s2 * s;
    (2.0 * s3 - 3.0 * s2 + 1.0) * y0 + (s3 - 2.0 * s2 + s) * d0 + (-2.0 * s3 + 3.0 * s2) * y1 + (s3 - s2) * d1
}
