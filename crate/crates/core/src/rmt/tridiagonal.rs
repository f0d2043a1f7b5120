use rand::Rng;
use rand_distr::{ChiSquared, Distribution, StandardNormal};

use crate::error::{Error, Result};

/// Diagonal and off-diagonal of the Dumitriu–Edelman β-Hermite matrix of
/// size `n`. Its eigenvalues follow the Gaussian β-ensemble with diagonal
/// variance one.
pub fn beta_hermite<R: Rng + ?Sized>(n: usize, beta: f64, rng: &mut R) -> (Vec<f64>, Vec<f64>) {
    let diagonal = (0..n).map(|_| rng.sample::<f64, _>(StandardNormal)).collect();
    let off_diagonal = (1..n)
        .map(|k| {
            let dof = beta * (n - k) as f64;
            let chi = ChiSquared::new(dof).expect("positive degrees of freedom").sample(rng).sqrt();
            chi / std::f64::consts::SQRT_2
        })
        .collect();
    (diagonal, off_diagonal)
}

/// Eigenvalues of the symmetric tridiagonal matrix with the given diagonal
/// and off-diagonal, in increasing order, by implicit QL iteration with
/// Wilkinson shifts.
pub fn tridiagonal_eigenvalues(diagonal: &[f64], off_diagonal: &[f64]) -> Result<Vec<f64>> {
    let n = diagonal.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    if off_diagonal.len() + 1 != n {
        return Err(Error::InvalidParameter(format!(
            "off-diagonal has length {} for a matrix of size {n}",
            off_diagonal.len()
        )));
    }
    let mut d = diagonal.to_vec();
    let mut e = off_diagonal.to_vec();
    e.push(0.0);
    for l in 0..n {
        let mut iterations = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iterations += 1;
            if iterations > 60 {
                return Err(Error::ConvergenceFailure(format!("QL iteration did not converge for eigenvalue {l}")));
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut i = m;
            let mut underflow = false;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    d.sort_by(f64::total_cmp);
    Ok(d)
}
