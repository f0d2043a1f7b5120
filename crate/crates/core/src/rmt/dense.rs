use nalgebra::{Complex, DMatrix};
use rand::Rng;
use rand_distr::{Distribution, Normal, StandardNormal};

use crate::kernels::EnsembleKind;

/// Eigenvalues of one dense Gaussian matrix with diagonal variance one and
/// off-diagonal `E|h_ij|² = β/2`, sorted. Quaternion self-dual matrices are
/// represented as `2n × 2n` complex matrices and return all `2n` values.
pub fn dense_eigenvalues<R: Rng + ?Sized>(kind: EnsembleKind, n: usize, rng: &mut R) -> Vec<f64> {
    let half = Normal::new(0.0, std::f64::consts::FRAC_1_SQRT_2).expect("valid normal");
    let mut values: Vec<f64> = match kind {
        EnsembleKind::Goe => {
            let mut h = DMatrix::<f64>::zeros(n, n);
            for i in 0..n {
                h[(i, i)] = rng.sample(StandardNormal);
                for j in i + 1..n {
                    let x = half.sample(rng);
                    h[(i, j)] = x;
                    h[(j, i)] = x;
                }
            }
            h.symmetric_eigenvalues().iter().copied().collect()
        }
        EnsembleKind::Gue => {
            let mut h = DMatrix::<Complex<f64>>::zeros(n, n);
            for i in 0..n {
                h[(i, i)] = Complex::new(rng.sample(StandardNormal), 0.0);
                for j in i + 1..n {
                    let z = Complex::new(half.sample(rng), half.sample(rng));
                    h[(i, j)] = z;
                    h[(j, i)] = z.conj();
                }
            }
            h.symmetric_eigenvalues().iter().copied().collect()
        }
        EnsembleKind::Gse => {
            let m = 2 * n;
            let mut h = DMatrix::<Complex<f64>>::zeros(m, m);
            for i in 0..n {
                let a: f64 = rng.sample(StandardNormal);
                h[(2 * i, 2 * i)] = Complex::new(a, 0.0);
                h[(2 * i + 1, 2 * i + 1)] = Complex::new(a, 0.0);
                for j in i + 1..n {
                    let (a, b, c, d) = (half.sample(rng), half.sample(rng), half.sample(rng), half.sample(rng));
                    let block = [[Complex::new(a, b), Complex::new(c, d)], [Complex::new(-c, d), Complex::new(a, -b)]];
                    for (r, row) in block.iter().enumerate() {
                        for (s, &z) in row.iter().enumerate() {
                            h[(2 * i + r, 2 * j + s)] = z;
                            h[(2 * j + s, 2 * i + r)] = z.conj();
                        }
                    }
                }
            }
            h.symmetric_eigenvalues().iter().copied().collect()
        }
    };
    values.sort_by(f64::total_cmp);
    values
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn symplectic_values_come_in_pairs() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let values = dense_eigenvalues(EnsembleKind::Gse, 24, &mut rng);
        assert_eq!(values.len(), 48);
        for pair in values.chunks(2) {
            assert!((pair[0] - pair[1]).abs() < 1e-8, "{pair:?}");
        }
    }
}
