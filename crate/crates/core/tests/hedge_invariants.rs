//! Hedge-engine invariants: the in-sample optimality of the
//! minimum-variance ratio, its algebraic identities, and qualitative
//! behaviour on a persistent common-factor pair.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use wavehedge_core::effectiveness::he_variance;
use wavehedge_core::hedge::{
    hedge_portfolio, min_variance_ratio, run_multiscale_window, run_rolling_study, HedgeConfig,
};
use wavehedge_core::moments::{covariance, variance, Centering};
use wavehedge_core::synthetic::{common_factor_returns, CommonFactorConfig};
use wavehedge_core::wavelet::{filter_table, modwt, FilterKind};

fn random_pair(n: usize, seed: u64) -> (Vec<f64>, Vec<f64>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut spot = Vec::with_capacity(n);
    let mut futures = Vec::with_capacity(n);
    for _ in 0..n {
        let f: f64 = rng.gen_range(-1.0..1.0);
        futures.push(f);
        spot.push(0.7 * f + rng.gen_range(-0.5..0.5));
    }
    (spot, futures)
}

#[test]
fn he_variance_equals_squared_correlation() {
    for seed in 0..25u64 {
        let (spot, futures) = random_pair(256, 100 + seed);
        let filter = filter_table(FilterKind::ALL[(seed % 4) as usize]);
        let spot_dec = modwt(&spot, &filter, 3).unwrap();
        let futures_dec = modwt(&futures, &filter, 3).unwrap();
        for level in 1..=3 {
            let width = spot_dec.boundary_width(level);
            let s = spot_dec.detail(level);
            let f = futures_dec.detail(level);
            let h = min_variance_ratio(s, f, width, Centering::Zero).unwrap();
            let portfolio = hedge_portfolio(s, f, h).unwrap();
            let he = he_variance(&portfolio, s, width, Centering::Zero).unwrap();

            let cov = covariance(s, f, width, Centering::Zero).unwrap();
            let rho_squared = cov * cov
                / (variance(s, width, Centering::Zero).unwrap()
                    * variance(f, width, Centering::Zero).unwrap());
            assert!(
                (he - rho_squared).abs() <= 1e-12 * rho_squared.max(1e-30),
                "level {level}: {he} vs {rho_squared}"
            );
        }
    }
}

#[test]
fn perturbed_ratio_never_beats_the_minimum_variance_ratio() {
    for seed in 0..50u64 {
        let (spot, futures) = random_pair(200, 200 + seed);
        let width = if seed % 2 == 0 { 1 } else { 8 };
        let centering = if seed % 2 == 0 {
            Centering::SampleMean
        } else {
            Centering::Zero
        };
        let h = min_variance_ratio(&spot, &futures, width, centering).unwrap();
        let optimal = he_variance(
            &hedge_portfolio(&spot, &futures, h).unwrap(),
            &spot,
            width,
            centering,
        )
        .unwrap();
        for delta in [-0.01, 0.01] {
            let perturbed = he_variance(
                &hedge_portfolio(&spot, &futures, h + delta).unwrap(),
                &spot,
                width,
                centering,
            )
            .unwrap();
            assert!(
                optimal > perturbed,
                "seed {seed} delta {delta}: {optimal} vs {perturbed}"
            );
        }
    }
}

#[test]
fn rescaling_futures_rescales_ratio_and_keeps_effectiveness() {
    let (spot, futures) = random_pair(300, 301);
    let h = min_variance_ratio(&spot, &futures, 1, Centering::SampleMean).unwrap();
    let he = he_variance(
        &hedge_portfolio(&spot, &futures, h).unwrap(),
        &spot,
        1,
        Centering::SampleMean,
    )
    .unwrap();
    for c in [0.2, 5.0, 42.0] {
        let scaled: Vec<f64> = futures.iter().map(|v| c * v).collect();
        let h_scaled = min_variance_ratio(&spot, &scaled, 1, Centering::SampleMean).unwrap();
        assert!((h_scaled - h / c).abs() <= 1e-10 * (h / c).abs());
        let he_scaled = he_variance(
            &hedge_portfolio(&spot, &scaled, h_scaled).unwrap(),
            &spot,
            1,
            Centering::SampleMean,
        )
        .unwrap();
        assert!((he_scaled - he).abs() <= 1e-10 * he.abs());
    }
}

#[test]
fn out_of_sample_effectiveness_may_go_negative_and_is_not_clamped() {
    // correlation flips sign between the in-sample and out-of-sample halves,
    // so the frozen ratio destroys variance out of sample
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let half = 150;
    let mut spot = Vec::new();
    let mut futures = Vec::new();
    for i in 0..2 * half {
        let f: f64 = rng.gen_range(-1.0..1.0);
        let sign = if i < half { 1.0 } else { -1.0 };
        futures.push(f);
        spot.push(sign * f + 0.05 * rng.gen_range(-1.0f64..1.0));
    }
    let config = HedgeConfig {
        window: half,
        oos_window: half,
        levels: 2,
        stride: 1,
        ..HedgeConfig::default()
    };
    let result = run_multiscale_window(&spot, &futures, &config, 0).unwrap();
    let scale0 = result.scales[0].usable().unwrap();
    let oos = scale0.out_of_sample.metrics().unwrap();
    assert!(scale0.in_sample.he_variance > 0.9);
    assert!(oos.he_variance < -1.0, "{}", oos.he_variance);
}

#[test]
fn hedge_ratio_and_effectiveness_rise_with_scale_for_persistent_signal() {
    let (spot, futures) = common_factor_returns(&CommonFactorConfig {
        n: 2600,
        ar_coefficient: 0.9,
        spot_noise_sd: 0.05f64.sqrt(),
        futures_noise_sd: (3.0f64 / 7.0).sqrt(),
        futures_noise_ma: 0.0,
        seed: 9090,
    });
    let config = HedgeConfig {
        window: 600,
        oos_window: 600,
        stride: 100,
        levels: 4,
        ..HedgeConfig::default()
    };
    let study = run_rolling_study(&spot, &futures, &config).unwrap();

    let ratios: Vec<f64> = study.averages_strict[1..]
        .iter()
        .map(|a| a.hedge_ratio.value().unwrap())
        .collect();
    assert!(
        ratios.windows(2).all(|w| w[1] > w[0]),
        "hedge ratio not increasing across scales: {ratios:?}"
    );

    let he: Vec<f64> = study.averages_strict[1..]
        .iter()
        .map(|a| a.in_sample.he_variance.value().unwrap())
        .collect();
    assert!(
        he.windows(2).all(|w| w[1] > w[0]),
        "effectiveness not increasing across scales: {he:?}"
    );

    // hedged in-sample variance never exceeds unhedged at any scale
    for result in &study.results {
        for outcome in &result.scales {
            if let Some(h) = outcome.usable() {
                assert!(h.in_sample.he_variance >= 0.0);
                assert!(h.in_sample.he_variance <= 1.0);
                assert!(h.in_sample.hedged.stdev <= h.in_sample.unhedged.stdev);
            }
        }
    }
}

/// Population wavelet moment of a stationary process with autocovariance
/// `gamma`, through the explicit level-`level` equivalent wavelet filter:
/// `sum_{k,l} h[k] h[l] gamma(k−l)`.
fn population_wavelet_variance(
    filter: &wavehedge_core::wavelet::WaveletFilter,
    level: usize,
    gamma: impl Fn(usize) -> f64,
) -> f64 {
    let (taps, _) = wavehedge_core::wavelet::equivalent_filters(filter, level);
    let mut total = 0.0;
    for (k, &a) in taps.iter().enumerate() {
        for (l, &b) in taps.iter().enumerate() {
            total += a * b * gamma(k.abs_diff(l));
        }
    }
    total
}

#[test]
fn scale_ratios_match_closed_form_signal_noise_split() {
    // spot = c + white(v_s), futures = c + white(v_f) with AR(1) common
    // signal: the population ratio at each scale is
    // nu2_c / (nu2_c + nu2_noise), computable from the filter taps and the
    // process autocovariances without running the transform at all
    let phi: f64 = 0.9;
    let spot_noise_variance = 0.25 * 0.25;
    let futures_noise_variance = 0.6 * 0.6;
    let (spot, futures) = common_factor_returns(&CommonFactorConfig {
        n: 30_000,
        ar_coefficient: phi,
        spot_noise_sd: 0.25,
        futures_noise_sd: 0.6,
        futures_noise_ma: 0.0,
        seed: 6666,
    });
    let filter = filter_table(FilterKind::La8);
    let levels = 5;
    let spot_dec = modwt(&spot, &filter, levels).unwrap();
    let futures_dec = modwt(&futures, &filter, levels).unwrap();

    for level in 1..=levels {
        let signal = population_wavelet_variance(&filter, level, |lag| phi.powi(lag as i32));
        let noise =
            population_wavelet_variance(&filter, level, |lag| {
                if lag == 0 {
                    futures_noise_variance
                } else {
                    0.0
                }
            });
        let predicted_ratio = signal / (signal + noise);

        let width = spot_dec.boundary_width(level);
        let estimated = min_variance_ratio(
            spot_dec.detail(level),
            futures_dec.detail(level),
            width,
            Centering::Zero,
        )
        .unwrap();
        assert!(
            (estimated - predicted_ratio).abs() < 0.05 * predicted_ratio,
            "level {level}: estimated {estimated} vs closed form {predicted_ratio}"
        );

        // effectiveness closed form: rho^2 of the two legs
        let spot_noise =
            population_wavelet_variance(&filter, level, |lag| {
                if lag == 0 {
                    spot_noise_variance
                } else {
                    0.0
                }
            });
        let predicted_he = signal * signal / ((signal + spot_noise) * (signal + noise));
        let h = estimated;
        let portfolio =
            hedge_portfolio(spot_dec.detail(level), futures_dec.detail(level), h).unwrap();
        let he = he_variance(&portfolio, spot_dec.detail(level), width, Centering::Zero).unwrap();
        assert!(
            (he - predicted_he).abs() < 0.05 * predicted_he + 0.01,
            "level {level}: he {he} vs closed form {predicted_he}"
        );
    }
}

#[test]
fn subsampled_effectiveness_matches_aggregation_closed_form() {
    use wavehedge_core::hedge::run_subsampled_study;
    use wavehedge_core::synthetic::{returns_to_prices, synthetic_dates};
    use wavehedge_core::timeseries::PriceSeries;

    let phi: f64 = 0.9;
    let v_s = 0.25 * 0.25;
    let v_f = 0.6 * 0.6;
    let (spot, futures) = common_factor_returns(&CommonFactorConfig {
        n: 24_000,
        ar_coefficient: phi,
        spot_noise_sd: 0.25,
        futures_noise_sd: 0.6,
        futures_noise_ma: 0.0,
        seed: 7777,
    });
    let scale = 0.001;
    let to_prices = |r: &[f64]| {
        let scaled: Vec<f64> = r.iter().map(|v| v * scale).collect();
        PriceSeries::new(
            synthetic_dates(r.len() + 1),
            returns_to_prices(&scaled, 100.0),
        )
        .unwrap()
    };
    let study = run_subsampled_study(&to_prices(&spot), &to_prices(&futures), &[1, 3, 6, 12], 240)
        .unwrap();

    // variance of a k-day aggregate of the AR(1) signal
    let aggregate_signal = |k: usize| {
        let mut total = k as f64;
        for lag in 1..k {
            total += 2.0 * (k - lag) as f64 * phi.powi(lag as i32);
        }
        total
    };
    for (row, &k) in study.rows.iter().zip(&[1usize, 3, 6, 12]) {
        let signal = aggregate_signal(k);
        let predicted_he =
            signal * signal / ((signal + k as f64 * v_s) * (signal + k as f64 * v_f));
        let he = row.he_variance.value().unwrap();
        assert!(
            (he - predicted_he).abs() < 0.08 * predicted_he,
            "horizon {k}: {he} vs {predicted_he}"
        );
    }
}

#[test]
fn subsample_horizon_one_matches_rolling_scale_zero() {
    use wavehedge_core::hedge::run_subsampled_study;
    use wavehedge_core::synthetic::{returns_to_prices, synthetic_dates};
    use wavehedge_core::timeseries::PriceSeries;

    let (spot, futures) = random_pair(700, 808);
    let scale = 0.001;
    let to_prices = |r: &[f64]| {
        let scaled: Vec<f64> = r.iter().map(|v| v * scale).collect();
        PriceSeries::new(
            synthetic_dates(r.len() + 1),
            returns_to_prices(&scaled, 100.0),
        )
        .unwrap()
    };
    let spot_prices = to_prices(&spot);
    let futures_prices = to_prices(&futures);

    let subsample =
        run_subsampled_study(&spot_prices, &futures_prices, &[1], 200).unwrap();

    let spot_returns = spot_prices.log_returns();
    let futures_returns = futures_prices.log_returns();
    let config = HedgeConfig {
        window: 200,
        oos_window: 200,
        stride: 1,
        levels: 1,
        ..HedgeConfig::default()
    };
    let rolling = run_rolling_study(spot_returns.values(), futures_returns.values(), &config)
        .unwrap();

    // the daily-horizon subsample path and the rolling scale-0 path see the
    // same windows of the same returns, so the ratios agree bit for bit
    let mut compared = 0;
    for result in rolling.results.iter().chain(rolling.insample_tail.iter()) {
        let row = &subsample.per_window[result.window_start];
        assert_eq!(row.window_start, result.window_start);
        let hedge = result.scales[0].usable().unwrap();
        assert_eq!(row.hedge_ratio.value().unwrap(), hedge.hedge_ratio);
        assert_eq!(row.he_variance.value().unwrap(), hedge.in_sample.he_variance);
        compared += 1;
    }
    assert!(compared > 400);
}

#[test]
fn rolling_results_are_order_deterministic() {
    let (spot, futures) = random_pair(400, 500);
    let config = HedgeConfig {
        window: 120,
        oos_window: 120,
        stride: 7,
        levels: 3,
        ..HedgeConfig::default()
    };
    let a = run_rolling_study(&spot, &futures, &config).unwrap();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap();
    let b = pool.install(|| run_rolling_study(&spot, &futures, &config).unwrap());
    assert_eq!(a, b);
}
