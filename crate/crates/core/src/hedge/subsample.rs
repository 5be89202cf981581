//! Subsampled-horizon hedging baseline.
//!
//! Returns are rebuilt from prices kept every `k` days, so a 200-day window
//! shrinks to `floor(200/k)` data points at horizon `k`. Hedge ratio and
//! in-sample variance reduction are estimated per rolling window on the
//! subsampled returns and averaged, quantifying what the shrinking sample
//! does to estimate quality as the horizon grows.

use chrono::NaiveDate;

use crate::error::{Error, Result};
use crate::metric::MetricValue;
use crate::moments::{moment_summary, variance, Centering};
use crate::timeseries::{ensure_aligned, rolling_windows, PriceSeries};

use super::{hedge_portfolio, min_variance_ratio, na_reason_for};

/// Window-averaged statistics for one horizon.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SubsampleRow {
    pub horizon: usize,
    /// Observations per rolling window at this horizon.
    pub points_per_window: usize,
    /// Number of windows with a defined hedge ratio.
    pub windows: usize,
    pub hedge_ratio: MetricValue,
    pub he_variance: MetricValue,
    pub stdev_unhedged: MetricValue,
    pub stdev_hedged: MetricValue,
    pub skewness_unhedged: MetricValue,
    pub skewness_hedged: MetricValue,
    pub kurtosis_unhedged: MetricValue,
    pub kurtosis_hedged: MetricValue,
}

/// One rolling window at one horizon.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SubsampleWindowRow {
    pub horizon: usize,
    /// Start index in subsampled-return units.
    pub window_start: usize,
    /// Date of the last return in the window.
    pub end_date: NaiveDate,
    pub hedge_ratio: MetricValue,
    pub he_variance: MetricValue,
}

/// Averaged rows plus the per-window effectiveness series behind them.
#[derive(Debug, Clone, PartialEq)]
pub struct SubsampleStudy {
    pub rows: Vec<SubsampleRow>,
    pub per_window: Vec<SubsampleWindowRow>,
}

/// Runs the subsampled baseline for each horizon.
///
/// `window_days` is the window length in days; at horizon `k` the window
/// holds `floor(window_days/k)` subsampled observations (at least 4, or the
/// horizon is rejected as too coarse for moments).
pub fn run_subsampled_study(
    spot: &PriceSeries,
    futures: &PriceSeries,
    horizons: &[usize],
    window_days: usize,
) -> Result<SubsampleStudy> {
    ensure_aligned(spot, futures)?;
    if horizons.is_empty() {
        return Err(Error::ZeroParameter { what: "horizons" });
    }
    let mut rows = Vec::with_capacity(horizons.len());
    let mut per_window = Vec::new();

    for &horizon in horizons {
        if horizon == 0 {
            return Err(Error::ZeroParameter { what: "horizon" });
        }
        let points = window_days / horizon;
        if points < 4 {
            return Err(Error::HorizonTooCoarse { horizon, points });
        }
        let spot_returns = spot.subsample_returns(horizon)?;
        let futures_returns = futures.subsample_returns(horizon)?;

        let mut ratio_acc = super::rolling::MeanAcc::default();
        let mut he_acc = super::rolling::MeanAcc::default();
        let mut moment_accs = [super::rolling::MeanAcc::default(); 6];
        let mut usable = 0usize;

        for range in rolling_windows(spot_returns.len(), points, 1)? {
            let window_start = range.start;
            let end_date = spot_returns.dates()[range.end - 1];
            let s = &spot_returns.values()[range.clone()];
            let f = &futures_returns.values()[range];

            let evaluated = evaluate_subsample_window(s, f);
            match evaluated {
                Ok((ratio, he, summaries)) => {
                    usable += 1;
                    ratio_acc.push(ratio);
                    he_acc.push(he);
                    for (acc, value) in moment_accs.iter_mut().zip(summaries) {
                        acc.push_metric(value);
                    }
                    per_window.push(SubsampleWindowRow {
                        horizon,
                        window_start,
                        end_date,
                        hedge_ratio: MetricValue::Value(ratio),
                        he_variance: MetricValue::Value(he),
                    });
                }
                Err(e) => match na_reason_for(&e) {
                    Some(reason) => per_window.push(SubsampleWindowRow {
                        horizon,
                        window_start,
                        end_date,
                        hedge_ratio: MetricValue::Na(reason),
                        he_variance: MetricValue::Na(reason),
                    }),
                    None => return Err(e),
                },
            }
        }

        rows.push(SubsampleRow {
            horizon,
            points_per_window: points,
            windows: usable,
            hedge_ratio: ratio_acc.mean(),
            he_variance: he_acc.mean(),
            stdev_unhedged: moment_accs[0].mean(),
            stdev_hedged: moment_accs[1].mean(),
            skewness_unhedged: moment_accs[2].mean(),
            skewness_hedged: moment_accs[3].mean(),
            kurtosis_unhedged: moment_accs[4].mean(),
            kurtosis_hedged: moment_accs[5].mean(),
        });
    }

    Ok(SubsampleStudy { rows, per_window })
}

/// Ratio, variance reduction and the six moment cells of one window.
#[allow(clippy::type_complexity)]
fn evaluate_subsample_window(s: &[f64], f: &[f64]) -> Result<(f64, f64, [MetricValue; 6])> {
    let ratio = min_variance_ratio(s, f, 1, Centering::SampleMean)?;
    let portfolio = hedge_portfolio(s, f, ratio)?;
    let unhedged_variance = variance(s, 1, Centering::SampleMean)?;
    if unhedged_variance == 0.0 {
        return Err(Error::ZeroVariance {
            what: "unhedged returns",
        });
    }
    let he = 1.0 - variance(&portfolio, 1, Centering::SampleMean)? / unhedged_variance;
    let unhedged = moment_summary(s, 1, Centering::SampleMean)?;
    let hedged = moment_summary(&portfolio, 1, Centering::SampleMean)?;
    Ok((
        ratio,
        he,
        [
            MetricValue::Value(unhedged.stdev),
            MetricValue::Value(hedged.stdev),
            unhedged.skewness,
            hedged.skewness,
            unhedged.kurtosis,
            hedged.kurtosis,
        ],
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::synthetic::{common_factor_returns, returns_to_prices, synthetic_dates, CommonFactorConfig};

    fn price_pair(n_returns: usize, seed: u64) -> (PriceSeries, PriceSeries) {
        let (s, f) = common_factor_returns(&CommonFactorConfig {
            n: n_returns,
            ar_coefficient: 0.95,
            spot_noise_sd: 0.2,
            futures_noise_sd: 0.6,
            futures_noise_ma: 0.0,
            seed,
        });
        // scale returns down to realistic magnitudes so prices stay sane
        let scale = 0.01;
        let s: Vec<f64> = s.iter().map(|v| v * scale).collect();
        let f: Vec<f64> = f.iter().map(|v| v * scale).collect();
        let dates = synthetic_dates(n_returns + 1);
        (
            PriceSeries::new(dates.clone(), returns_to_prices(&s, 100.0)).unwrap(),
            PriceSeries::new(dates, returns_to_prices(&f, 50.0)).unwrap(),
        )
    }

    #[test]
    fn points_per_window_match_horizons() {
        let (spot, futures) = price_pair(2400, 31);
        let study = run_subsampled_study(&spot, &futures, &[1, 3, 6, 12], 200).unwrap();
        let points: Vec<usize> = study.rows.iter().map(|r| r.points_per_window).collect();
        assert_eq!(points, vec![200, 66, 33, 16]);
        assert!(study.rows.iter().all(|r| r.windows > 0));
    }

    #[test]
    fn effectiveness_rises_with_horizon_for_persistent_common_factor() {
        let (spot, futures) = price_pair(4000, 32);
        let study = run_subsampled_study(&spot, &futures, &[1, 3, 6, 12], 200).unwrap();
        let he: Vec<f64> = study
            .rows
            .iter()
            .map(|r| r.he_variance.value().unwrap())
            .collect();
        assert!(
            he.windows(2).all(|w| w[1] > w[0]),
            "not increasing: {he:?}"
        );
    }

    #[test]
    fn window_count_matches_rolling_formula() {
        let (spot, futures) = price_pair(500, 33);
        let study = run_subsampled_study(&spot, &futures, &[3], 200).unwrap();
        // 500 returns -> floor(500/3) = 166 subsampled returns, window 66
        let expected = 166 - 66 + 1;
        assert_eq!(study.per_window.len(), expected);
        assert_eq!(study.rows[0].windows, expected);
    }

    #[test]
    fn coarse_horizon_is_rejected() {
        let (spot, futures) = price_pair(800, 34);
        match run_subsampled_study(&spot, &futures, &[60], 200) {
            Err(Error::HorizonTooCoarse { horizon, points }) => {
                assert_eq!(horizon, 60);
                assert_eq!(points, 3);
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
