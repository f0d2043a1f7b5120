use super::quad::integrate;
use super::testfn::TestFunction;
use super::window::WindowParams;
use crate::error::Result;
use crate::flux::FluxIndex;

const DIRECT_TERMS_MIN: usize = 32;
const SERIES_TERMS_MAX: usize = 80;

/// Correction integral `I_{f,q}(L,τ)`, reported with its error estimate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IfqValue {
    pub value: f64,
    pub error: f64,
}

/// `I_{f,q}(L,τ)`; zero for `q = ∞`.
///
/// After substituting `y = nqx/L` in the `n`-th term, the whole sum becomes
/// one integral over `0 < y < A`:
/// `(4/q) ∫ f̂(y) cos(Lτy) / sinh(Ly/2) · S(Ly/(2q)) dy` with
/// `S(c) = Σ_n sinh²(c/n)/n`. The first `N` terms of `S` are summed
/// directly and the remainder through the power series of `sinh²` and
/// Hurwitz zeta values.
pub fn i_fq(tf: &TestFunction, w: &WindowParams, q: FluxIndex) -> Result<IfqValue> {
    let q = match q {
        FluxIndex::Infinite => return Ok(IfqValue { value: 0.0, error: 0.0 }),
        FluxIndex::Finite(q) => q as f64,
    };
    if tf.amplitude() == 0.0 {
        return Ok(IfqValue { value: 0.0, error: 0.0 });
    }
    let a = tf.support();
    let c_max = w.l * a / (2.0 * q);
    let sum = SinhSquareSum::new(c_max);
    let integrand = |y: f64| {
        if y <= 0.0 {
            return 0.0;
        }
        let c = w.l * y / (2.0 * q);
        tf.fhat(y) * (w.l * w.tau * y).cos() / (w.l * y / 2.0).sinh() * sum.eval(c)
    };
    let panels = (a * w.l * w.tau / std::f64::consts::PI).ceil() as usize + 4;
    let scale = 4.0 / q;
    let r = integrate(integrand, 0.0, a, tf.quadrature_tol() / scale, panels)?;
    Ok(IfqValue { value: scale * r.value, error: scale * r.error })
}

/// Evaluates `S(c) = Σ_{n≥1} sinh²(c/n)/n` for `0 ≤ c ≤ c_max`.
pub struct SinhSquareSum {
    direct_terms: usize,
    /// `2^{2k-1}/(2k)! · ζ(2k+1, N+1)` for `k = 1, 2, …`.
    tail_coefficients: Vec<f64>,
}

impl SinhSquareSum {
    pub fn new(c_max: f64) -> Self {
        let direct_terms = DIRECT_TERMS_MIN.max((4.0 * c_max).ceil() as usize);
        let start = direct_terms as f64 + 1.0;
        let mut tail_coefficients = Vec::new();
        let mut factor = 1.0;
        for k in 1..=SERIES_TERMS_MAX {
            let two_k = 2.0 * k as f64;
            factor *= 4.0 / (two_k * (two_k - 1.0));
            let coefficient = 0.5 * factor * hurwitz_zeta(two_k + 1.0, start);
            tail_coefficients.push(coefficient);
            if coefficient * c_max.max(1.0).powf(two_k) < 1e-18 {
                break;
            }
        }
        SinhSquareSum { direct_terms, tail_coefficients }
    }

    pub fn eval(&self, c: f64) -> f64 {
        let mut direct = 0.0;
        for n in (1..=self.direct_terms).rev() {
            let s = (c / n as f64).sinh();
            direct += s * s / n as f64;
        }
        let c2 = c * c;
        let mut power = c2;
        let mut tail = 0.0;
        for &coefficient in &self.tail_coefficients {
            tail += coefficient * power;
            power *= c2;
        }
        direct + tail
    }
}

const BERNOULLI_OVER_FACTORIAL: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30240.0,
    -1.0 / 1209600.0,
    1.0 / 47900160.0,
    -691.0 / 1307674368000.0,
    1.0 / 74724249600.0,
    -3617.0 / 10670622842880000.0,
];

/// Hurwitz zeta `ζ(s, a) = Σ_{n≥0} (n+a)^{-s}` for `s > 1`, `a > 0`, by
/// summing a few terms directly and applying Euler–Maclaurin.
pub fn hurwitz_zeta(s: f64, a: f64) -> f64 {
    let shift = (12.0 - a).max(0.0).ceil() as usize;
    let mut head = 0.0;
    for n in 0..shift {
        head += (n as f64 + a).powf(-s);
    }
    let m = a + shift as f64;
    let mut sum = m.powf(1.0 - s) / (s - 1.0) + 0.5 * m.powf(-s);
    let mut rising = s;
    let mut power = m.powf(-s - 1.0);
    for (j, &b) in BERNOULLI_OVER_FACTORIAL.iter().enumerate() {
        let term = b * rising * power;
        sum += term;
        if term.abs() < 1e-18 * sum.abs() {
            break;
        }
        let k = 2.0 * j as f64;
        rising *= (s + k + 1.0) * (s + k + 2.0);
        power /= m * m;
    }
    head + sum
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeta_values() {
        let zeta3 = 1.202_056_903_159_594_3;
        assert!((hurwitz_zeta(3.0, 1.0) - zeta3).abs() < 1e-15);
        let z5 = 1.036_927_755_143_37;
        assert!((hurwitz_zeta(5.0, 1.0) - z5).abs() < 1e-14);
        // ζ(3, 1/2) = 7 ζ(3)
        assert!((hurwitz_zeta(3.0, 0.5) - 7.0 * zeta3).abs() < 1e-13);
        let direct: f64 = (0..200_000).map(|n| (n as f64 + 40.0).powf(-3.0)).sum();
        let remainder = hurwitz_zeta(3.0, 200_040.0);
        assert!((hurwitz_zeta(3.0, 40.0) - direct - remainder).abs() < 1e-16);
    }

    #[test]
    fn sinh_square_sum_matches_long_direct_sum() {
        let sum = SinhSquareSum::new(6.0);
        for c in [0.0, 0.3, 2.0, 6.0] {
            let mut direct = 0.0;
            for n in (1..=2_000_000usize).rev() {
                let s = (c / n as f64).sinh();
                direct += s * s / n as f64;
            }
            let remainder = c * c / (2.0 * 2_000_000.5f64.powi(2));
            assert!((sum.eval(c) - direct - remainder).abs() < 1e-12 * (1.0 + direct), "c={c}");
        }
    }

    #[test]
    fn infinite_q_and_zero_function() {
        let tf = TestFunction::bump(1.0).unwrap();
        let w = WindowParams::new(6.0, 5.0).unwrap();
        assert_eq!(i_fq(&tf, &w, FluxIndex::Infinite).unwrap().value, 0.0);
        let zero = TestFunction::bump_scaled(1.0, 0.0).unwrap();
        assert_eq!(i_fq(&zero, &w, FluxIndex::Finite(2)).unwrap().value, 0.0);
    }

    #[test]
    fn deterministic() {
        let tf = TestFunction::bump(1.0).unwrap();
        let w = WindowParams::new(6.0, 5.0).unwrap();
        let a = i_fq(&tf, &w, FluxIndex::Finite(3)).unwrap().value;
        let b = i_fq(&tf, &w, FluxIndex::Finite(3)).unwrap().value;
        assert_eq!(a.to_bits(), b.to_bits());
    }
}
