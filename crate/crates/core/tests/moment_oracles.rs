//! Moment estimators checked against naive reference loops and their
//! analytic sampling behaviour.

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use wavehedge_core::moments::{
    sample_stats, variance, wavelet_covariance, wavelet_kurtosis, wavelet_skewness,
    wavelet_variance, Centering,
};
use wavehedge_core::wavelet::{filter_table, modwt, FilterKind};

/// Reference loops written straight from the estimator definitions.
#[allow(clippy::needless_range_loop)] // deliberately index-by-index, as the formulas read
mod naive {
    pub fn variance(d: &[f64], width: usize) -> f64 {
        let n = d.len();
        let m = (n - width + 1) as f64;
        let mut sum = 0.0;
        for t in width - 1..n {
            sum += d[t] * d[t];
        }
        sum / m
    }

    pub fn skewness(d: &[f64], width: usize) -> f64 {
        let n = d.len();
        let m = (n - width + 1) as f64;
        let mut sum = 0.0;
        for t in width - 1..n {
            sum += d[t] * d[t] * d[t];
        }
        (sum / m) / variance(d, width).powf(1.5)
    }

    pub fn kurtosis(d: &[f64], width: usize) -> f64 {
        let n = d.len();
        let m = (n - width + 1) as f64;
        let mut sum = 0.0;
        for t in width - 1..n {
            sum += d[t].powi(4);
        }
        (sum / m) / variance(d, width).powi(2)
    }

    pub fn covariance(a: &[f64], b: &[f64], width: usize) -> f64 {
        let n = a.len();
        let m = (n - width + 1) as f64;
        let mut sum = 0.0;
        for t in width - 1..n {
            sum += a[t] * b[t];
        }
        sum / m
    }
}

fn random_vec(n: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    (0..n).map(|_| rng.gen_range(-3.0..3.0)).collect()
}

#[test]
fn estimators_equal_reference_loops() {
    let mut rng = ChaCha8Rng::seed_from_u64(2001);
    for _ in 0..50 {
        let n = rng.gen_range(12..400);
        let width = rng.gen_range(1..=n.min(64));
        let a = random_vec(n, &mut rng);
        let b = random_vec(n, &mut rng);

        let tol = |x: f64| 1e-12 * x.abs().max(1.0);
        let v = wavelet_variance(&a, width).unwrap();
        assert!((v - naive::variance(&a, width)).abs() <= tol(v));
        let s = wavelet_skewness(&a, width).unwrap();
        assert!((s - naive::skewness(&a, width)).abs() <= tol(s));
        let k = wavelet_kurtosis(&a, width).unwrap();
        assert!((k - naive::kurtosis(&a, width)).abs() <= tol(k));
        let c = wavelet_covariance(&a, &b, width).unwrap();
        assert!((c - naive::covariance(&a, &b, width)).abs() <= tol(c));
    }
}

#[test]
fn kurtosis_is_at_least_one() {
    let mut rng = ChaCha8Rng::seed_from_u64(2002);
    for _ in 0..200 {
        let n = rng.gen_range(2..50);
        let d = random_vec(n, &mut rng);
        if let Ok(k) = wavelet_kurtosis(&d, 1) {
            assert!(k >= 1.0 - 1e-12, "{k}");
        }
    }
}

#[test]
fn variance_decomposes_across_scales() {
    // exact energy identity on all coefficients, and the unbiased
    // non-boundary estimator approaches the sample variance for large N
    let n = 1 << 14;
    let mut rng = ChaCha8Rng::seed_from_u64(2003);
    let x: Vec<f64> = (0..n).map(|_| rng.sample::<f64, _>(StandardNormal)).collect();
    let filter = filter_table(FilterKind::La8);
    let levels = 6;
    let d = modwt(&x, &filter, levels).unwrap();

    let sample_variance = variance(&x, 1, Centering::SampleMean).unwrap();

    let mut unbiased_sum = 0.0;
    for level in 1..=levels {
        unbiased_sum += wavelet_variance(d.detail(level), d.boundary_width(level)).unwrap();
    }
    let smooth_variance = variance(
        d.smooth(),
        d.boundary_width(levels),
        Centering::SampleMean,
    )
    .unwrap();
    let total = unbiased_sum + smooth_variance;
    assert!(
        (total - sample_variance).abs() <= 0.02 * sample_variance,
        "{total} vs {sample_variance}"
    );
}

#[test]
fn gaussian_jarque_bera_stays_below_critical_value() {
    // chi-squared(2) 95% critical value; fixed seeds, checked once
    let critical = 5.99;
    let mut below = 0;
    for seed in 0..20u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(3000 + seed);
        let x: Vec<f64> = (0..100_000)
            .map(|_| rng.sample::<f64, _>(StandardNormal))
            .collect();
        if sample_stats(&x).unwrap().jarque_bera < critical {
            below += 1;
        }
    }
    assert!(below >= 18, "only {below}/20 seeds below {critical}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn scaling_input_scales_moments(
        seed in 0u64..500,
        n in 8usize..200,
        width in 1usize..8,
        c in prop::sample::select(vec![0.1f64, 0.5, 2.0, 3.7, 25.0]),
    ) {
        prop_assume!(width <= n);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_vec(n, &mut rng);
        let b = random_vec(n, &mut rng);
        let scaled_a: Vec<f64> = a.iter().map(|v| c * v).collect();
        let scaled_b: Vec<f64> = b.iter().map(|v| c * v).collect();

        let rel = |x: f64, y: f64| (x - y).abs() <= 1e-10 * y.abs().max(1e-30);
        let v = wavelet_variance(&a, width).unwrap();
        prop_assert!(rel(wavelet_variance(&scaled_a, width).unwrap(), c * c * v));
        let cov = wavelet_covariance(&a, &b, width).unwrap();
        prop_assert!(rel(wavelet_covariance(&scaled_a, &scaled_b, width).unwrap(), c * c * cov));
        let s = wavelet_skewness(&a, width).unwrap();
        prop_assert!(rel(wavelet_skewness(&scaled_a, width).unwrap(), s));
        let k = wavelet_kurtosis(&a, width).unwrap();
        prop_assert!(rel(wavelet_kurtosis(&scaled_a, width).unwrap(), k));
    }
}
