//! Deterministic synthetic spot/futures pairs for experiments and tests.
//!
//! The generator follows a common-factor model: both legs share an AR(1)
//! signal and carry independent Gaussian noise, so the population hedge
//! ratio at the daily horizon is `Var(c)/(Var(c) + Var(noise_f))` and the
//! signal-to-noise ratio, and with it the hedge ratio, improves at longer
//! scales.

use chrono::NaiveDate;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

/// Common-factor model parameters; the shared signal has unit variance.
#[derive(Debug, Clone, Copy)]
pub struct CommonFactorConfig {
    pub n: usize,
    /// AR(1) coefficient of the shared signal, in (−1, 1).
    pub ar_coefficient: f64,
    /// Standard deviation of the spot-specific white noise.
    pub spot_noise_sd: f64,
    /// Standard deviation of the futures-specific noise.
    pub futures_noise_sd: f64,
    /// MA(1) coefficient of the futures noise: 0 keeps it white, values
    /// toward 1 concentrate it at the shortest scales (bid-ask-bounce
    /// style). The noise variance stays `futures_noise_sd²` either way.
    pub futures_noise_ma: f64,
    pub seed: u64,
}

impl Default for CommonFactorConfig {
    fn default() -> Self {
        Self {
            n: 1000,
            ar_coefficient: 0.9,
            spot_noise_sd: 0.5,
            futures_noise_sd: 0.5,
            futures_noise_ma: 0.0,
            seed: 0,
        }
    }
}

/// Draws a (spot, futures) return pair from the common-factor model.
pub fn common_factor_returns(config: &CommonFactorConfig) -> (Vec<f64>, Vec<f64>) {
    let phi = config.ar_coefficient;
    assert!(phi.abs() < 1.0, "AR(1) coefficient must be in (-1, 1)");
    let theta = config.futures_noise_ma;
    let innovation_sd = (1.0 - phi * phi).sqrt();
    let ma_norm = (1.0 + theta * theta).sqrt();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);

    let mut spot = Vec::with_capacity(config.n);
    let mut futures = Vec::with_capacity(config.n);
    let mut common: f64 = rng.sample::<f64, _>(StandardNormal);
    let mut previous_shock: f64 = rng.sample::<f64, _>(StandardNormal);
    for _ in 0..config.n {
        spot.push(common + config.spot_noise_sd * rng.sample::<f64, _>(StandardNormal));
        let shock: f64 = rng.sample::<f64, _>(StandardNormal);
        let futures_noise = (shock - theta * previous_shock) / ma_norm;
        futures.push(common + config.futures_noise_sd * futures_noise);
        previous_shock = shock;
        common = phi * common + innovation_sd * rng.sample::<f64, _>(StandardNormal);
    }
    (spot, futures)
}

/// Independent Gaussian returns with the given standard deviation.
pub fn gaussian_returns(n: usize, sd: f64, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| sd * rng.sample::<f64, _>(StandardNormal)).collect()
}

/// Compounds returns into a price path starting at `initial`; taking log
/// returns of the result recovers the input up to rounding.
pub fn returns_to_prices(returns: &[f64], initial: f64) -> Vec<f64> {
    let mut prices = Vec::with_capacity(returns.len() + 1);
    let mut log_price = initial.ln();
    prices.push(initial);
    for r in returns {
        log_price += r;
        prices.push(log_price.exp());
    }
    prices
}

/// Consecutive calendar dates for synthetic series.
pub fn synthetic_dates(n: usize) -> Vec<NaiveDate> {
    let start = NaiveDate::from_ymd_opt(1990, 1, 1).unwrap();
    (0..n).map(|i| start + chrono::Days::new(i as u64)).collect()
}
