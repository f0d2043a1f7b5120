//! Quadrature rules that are independent of the library's adaptive
//! Gauss–Kronrod integrator.

use std::f64::consts::PI;

use hypspec::kernels::{TestFunction, WindowParams};

/// Gauss–Legendre nodes and weights on `[-1, 1]` by Newton iteration.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    (1..=n)
        .map(|i| {
            let mut x = (PI * (i as f64 - 0.25) / (n as f64 + 0.5)).cos();
            loop {
                let (mut p0, mut p1) = (1.0, x);
                for k in 2..=n {
                    let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                    p0 = p1;
                    p1 = p2;
                }
                let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    let (mut p0, mut p1) = (1.0, x);
                    for k in 2..=n {
                        let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                        p0 = p1;
                        p1 = p2;
                    }
                    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
                    return (x, 2.0 / ((1.0 - x * x) * dp * dp));
                }
            }
        })
        .collect()
}

pub fn composite_gauss(f: impl Fn(f64) -> f64, a: f64, b: f64, panels: usize, rule: &[(f64, f64)]) -> f64 {
    let width = (b - a) / panels as f64;
    (0..panels)
        .map(|p| {
            let center = a + (p as f64 + 0.5) * width;
            rule.iter().map(|&(x, wt)| wt * f(center + 0.5 * width * x)).sum::<f64>() * 0.5 * width
        })
        .sum()
}

/// `S(c) = Σ sinh²(c/n)/n` by a long direct sum and the integral tail past
/// `n = 2000`.
pub fn sinh_square_sum_oracle(c: f64) -> f64 {
    let m = 2000;
    let mut total = 0.0;
    for n in (1..=m).rev() {
        let s = (c / n as f64).sinh();
        total += s * s / n as f64;
    }
    let x = m as f64 + 0.5;
    let mut factor = 1.0;
    for k in 1..20 {
        let two_k = 2.0 * k as f64;
        factor *= 4.0 / (two_k * (two_k - 1.0));
        total += 0.5 * factor * (c / x).powf(two_k) / two_k;
    }
    total
}

pub fn ifq_oracle(tf: &TestFunction, w: &WindowParams, q: u32) -> f64 {
    let rule = gauss_legendre(20);
    let q = q as f64;
    let a = tf.support();
    let integrand = |y: f64| {
        tf.fhat(y) * (w.l * w.tau * y).cos() / (w.l * y / 2.0).sinh() * sinh_square_sum_oracle(w.l * y / (2.0 * q))
    };
    let panels = 64 + (a * w.l * w.tau) as usize * 2;
    4.0 / q * composite_gauss(integrand, 0.0, a, panels, &rule)
}
