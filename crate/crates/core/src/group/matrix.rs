use std::ops::Mul;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A real 2×2 matrix `[[a, b], [c, d]]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Mat2 {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2 { a: 1.0, b: 0.0, c: 0.0, d: 1.0 };

    pub const fn new(a: f64, b: f64, c: f64, d: f64) -> Self {
        Mat2 { a, b, c, d }
    }

    pub fn from_row_major(e: [f64; 4]) -> Self {
        Mat2::new(e[0], e[1], e[2], e[3])
    }

    pub fn to_row_major(self) -> [f64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn det(&self) -> f64 {
        self.a * self.d - self.b * self.c
    }

    pub fn trace(&self) -> f64 {
        self.a + self.d
    }

    /// Inverse of a determinant-one matrix.
    pub fn inverse_unimodular(&self) -> Mat2 {
        Mat2::new(self.d, -self.b, -self.c, self.a)
    }

    pub fn scale(&self, s: f64) -> Mat2 {
        Mat2::new(self.a * s, self.b * s, self.c * s, self.d * s)
    }

    pub fn neg(&self) -> Mat2 {
        self.scale(-1.0)
    }

    /// Largest absolute entrywise difference.
    pub fn max_abs_diff(&self, other: &Mat2) -> f64 {
        [self.a - other.a, self.b - other.b, self.c - other.c, self.d - other.d]
            .iter()
            .fold(0.0, |m, x| m.max(x.abs()))
    }

    pub fn pow(&self, n: u32) -> Mat2 {
        (0..n).fold(Mat2::IDENTITY, |acc, _| acc * *self)
    }

    /// Hyperbolic distance from `i` to its image in the upper half-plane.
    pub fn displacement_of_i(&self) -> f64 {
        let s = self.a * self.a + self.b * self.b + self.c * self.c + self.d * self.d;
        (0.5 * s).max(1.0).acosh()
    }
}

impl Mul for Mat2 {
    type Output = Mat2;

    fn mul(self, o: Mat2) -> Mat2 {
        Mat2::new(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )
    }
}

/// Translation length `2·arccosh(|t|/2)` of a hyperbolic element with trace `t`.
pub fn trace_to_length(t: f64) -> Result<f64> {
    let half = t.abs() / 2.0;
    if half <= 1.0 || !half.is_finite() {
        return Err(Error::NotHyperbolic(t.abs()));
    }
    Ok(2.0 * half.acosh())
}

/// Trace magnitude `2·cosh(ℓ/2)` of an element of translation length `ℓ`.
pub fn length_to_trace(length: f64) -> f64 {
    2.0 * (length / 2.0).cosh()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn systole_trace() {
        let t = 2.0 * (1.0 + 2f64.sqrt());
        let l = trace_to_length(t).unwrap();
        assert!((l - 3.057_141_839).abs() < 1e-9);
        assert!((l - 2.0 * (1.0 + 2f64.sqrt()).acosh()).abs() < 1e-15);
    }

    #[test]
    fn unit_length() {
        let l = trace_to_length(2.0 * 0.5f64.cosh()).unwrap();
        assert!((l - 1.0).abs() < 1e-12);
    }

    #[test]
    fn parabolic_is_rejected() {
        assert!(matches!(trace_to_length(2.0), Err(Error::NotHyperbolic(_))));
        assert!(matches!(trace_to_length(-1.0), Err(Error::NotHyperbolic(_))));
    }

    #[test]
    fn inverse_and_product() {
        let m = Mat2::new(2.0, 1.0, 1.0, 1.0);
        assert!((m * m.inverse_unimodular()).max_abs_diff(&Mat2::IDENTITY) < 1e-15);
        assert_eq!(m.pow(0), Mat2::IDENTITY);
        assert!((m.pow(3).trace() - (m * m * m).trace()).abs() < 1e-12);
    }
}
