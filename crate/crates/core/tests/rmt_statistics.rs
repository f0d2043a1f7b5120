use std::f64::consts::PI;

use hypspec::flux::flux_rng;
use hypspec::kernels::{rmt_density, EnsembleKind, TestFunction};
use hypspec::rmt::{
    dense_eigenvalues, sample_eigenvalues, sample_spectrum, semicircle_cdf, statistic_variance, unfold, EnsembleSpec,
    Sampler,
};

#[test]
fn semicircle_histogram_chi_square() {
    let spec = EnsembleSpec::new(EnsembleKind::Gue, 128, 100, 8.0).unwrap();
    let bins = 20;
    let mut counts = vec![0usize; bins];
    for seed in 0..100 {
        for x in sample_spectrum(&spec, seed).unwrap() {
            let k = (((x + 2.0) / 4.0) * bins as f64).floor().clamp(0.0, bins as f64 - 1.0) as usize;
            counts[k] += 1;
        }
    }
    let total: usize = counts.iter().sum();
    let chi2: f64 = (0..bins)
        .map(|k| {
            let lo = -2.0 + 4.0 * k as f64 / bins as f64;
            let hi = lo + 4.0 / bins as f64;
            let expected = total as f64 * (semicircle_cdf(hi) - semicircle_cdf(lo));
            (counts[k] as f64 - expected).powi(2) / expected
        })
        .sum();
    // Upper 1% point of χ² with 19 degrees of freedom.
    assert!(chi2 < 36.19, "chi2 = {chi2}");
}

#[test]
fn unfolded_bulk_spacing_is_one() {
    let spec = EnsembleSpec::new(EnsembleKind::Goe, 512, 200, 32.0).unwrap();
    let mut spacings = Vec::new();
    for seed in 0..200 {
        let x = unfold(&sample_spectrum(&spec, seed).unwrap(), 512);
        assert!(x.windows(2).all(|p| p[0] <= p[1]));
        spacings.extend(x[128..384].windows(2).map(|p| p[1] - p[0]));
    }
    let mean = spacings.iter().sum::<f64>() / spacings.len() as f64;
    assert!((0.98..=1.02).contains(&mean), "mean spacing {mean}");
}

#[test]
fn two_by_two_goe_gap() {
    let mut rng = flux_rng(3, 0);
    let draws = 200_000;
    let gaps: Vec<f64> = (0..draws)
        .map(|_| {
            let v = dense_eigenvalues(EnsembleKind::Goe, 2, &mut rng);
            v[1] - v[0]
        })
        .collect();
    let mean = gaps.iter().sum::<f64>() / draws as f64;
    let var = gaps.iter().map(|g| (g - mean).powi(2)).sum::<f64>() / (draws - 1) as f64;
    let se = (var / draws as f64).sqrt();
    assert!((mean - PI.sqrt()).abs() < 4.0 * se, "{mean} vs {}", PI.sqrt());
    let mut rng = flux_rng(4, 0);
    let tri: f64 = (0..draws)
        .map(|_| {
            let v = sample_eigenvalues(EnsembleKind::Goe, 2, Sampler::Tridiagonal, &mut rng).unwrap();
            v[1] - v[0]
        })
        .sum::<f64>()
        / draws as f64;
    assert!((tri - PI.sqrt()).abs() < 4.0 * se, "{tri}");
}

#[test]
fn raw_symplectic_spectrum_is_doubled() {
    let mut rng = flux_rng(8, 0);
    let raw = dense_eigenvalues(EnsembleKind::Gse, 40, &mut rng);
    assert!(raw.chunks(2).all(|p| (p[0] - p[1]).abs() < 1e-8));
    let once = sample_eigenvalues(EnsembleKind::Gse, 40, Sampler::Dense, &mut rng).unwrap();
    assert_eq!(once.len(), 40);
}

#[test]
fn dense_and_tridiagonal_samplers_agree() {
    let tf = TestFunction::bump(1.0).unwrap();
    for kind in [EnsembleKind::Goe, EnsembleKind::Gse] {
        let mut spec = EnsembleSpec::new(kind, 96, 600, 8.0).unwrap();
        let tri = statistic_variance(&spec, &tf, 21, None).unwrap();
        spec.sampler = Sampler::Dense;
        let dense = statistic_variance(&spec, &tf, 22, None).unwrap();
        let combined = (tri.se.powi(2) + dense.se.powi(2)).sqrt();
        assert!((tri.variance - dense.variance).abs() < 3.5 * combined, "{kind}: {tri:?} vs {dense:?}");
    }
}

#[test]
fn ratio_law_between_ensembles() {
    let tf = TestFunction::bump(1.0).unwrap();
    let estimate = |kind| statistic_variance(&EnsembleSpec::new(kind, 256, 1000, 16.0).unwrap(), &tf, 40, None).unwrap();
    let goe = estimate(EnsembleKind::Goe);
    let gue = estimate(EnsembleKind::Gue);
    let gse = estimate(EnsembleKind::Gse);
    let check = |a: &hypspec::rmt::VarianceEstimate, factor: f64, b: &hypspec::rmt::VarianceEstimate| {
        let diff = a.variance - factor * b.variance;
        let se = (a.se.powi(2) + (factor * b.se).powi(2)).sqrt();
        assert!(diff.abs() < 3.0 * se, "{a:?} vs {factor} x {b:?}");
    };
    check(&goe, 2.0, &gue);
    check(&gue, 2.0, &gse);
    check(&goe, 4.0, &gse);
}

#[test]
fn window_width_independence() {
    let tf = TestFunction::bump(1.0).unwrap();
    let narrow = statistic_variance(&EnsembleSpec::new(EnsembleKind::Gue, 512, 600, 16.0).unwrap(), &tf, 50, None).unwrap();
    let wide = statistic_variance(&EnsembleSpec::new(EnsembleKind::Gue, 512, 600, 32.0).unwrap(), &tf, 51, None).unwrap();
    let se = (narrow.se.powi(2) + wide.se.powi(2)).sqrt();
    assert!((narrow.variance - wide.variance).abs() < 3.0 * se, "{narrow:?} vs {wide:?}");
    let density = rmt_density(&tf, EnsembleKind::Gue).unwrap();
    assert!((wide.variance - density).abs() < 0.15 * density);
}
