//! Rolling-window orchestration of the multiscale hedge study.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::metric::{MetricValue, NaReason};
use crate::moments::Centering;
use crate::wavelet::{equivalent_filter_width, filter_table, modwt};

use super::{
    evaluate_window, min_variance_ratio, na_reason_for, HedgeConfig, HedgeResult, SideMetrics,
};

/// Per-scale means of one sample side across windows; each metric averages
/// the windows where it was available.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AveragedSide {
    pub he_variance: MetricValue,
    pub he_var: MetricValue,
    pub he_semivariance: MetricValue,
    pub stdev_unhedged: MetricValue,
    pub stdev_hedged: MetricValue,
    pub skewness_unhedged: MetricValue,
    pub skewness_hedged: MetricValue,
    pub kurtosis_unhedged: MetricValue,
    pub kurtosis_hedged: MetricValue,
}

/// Window-averaged results for one scale.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaleAverages {
    pub scale: usize,
    /// Windows where the scale was usable.
    pub windows: usize,
    pub hedge_ratio: MetricValue,
    pub in_sample: AveragedSide,
    pub out_of_sample: Option<AveragedSide>,
}

/// Output of the full rolling study.
#[derive(Debug, Clone, PartialEq)]
pub struct RollingStudy {
    /// One result per window with both in- and out-of-sample coverage.
    pub results: Vec<HedgeResult>,
    /// Trailing windows where only the in-sample side fits.
    pub insample_tail: Vec<HedgeResult>,
    /// Averages over windows with both sides available.
    pub averages_strict: Vec<ScaleAverages>,
    /// In-sample averages over every in-sample-feasible window.
    pub averages_insample: Vec<ScaleAverages>,
    /// Static full-series hedge ratio per scale.
    pub static_ratios: Vec<MetricValue>,
}

#[derive(Default, Clone, Copy)]
pub(super) struct MeanAcc {
    sum: f64,
    count: usize,
}

impl MeanAcc {
    pub(super) fn push(&mut self, value: f64) {
        self.sum += value;
        self.count += 1;
    }

    pub(super) fn push_metric(&mut self, value: MetricValue) {
        if let MetricValue::Value(v) = value {
            self.push(v);
        }
    }

    pub(super) fn mean(&self) -> MetricValue {
        if self.count == 0 {
            MetricValue::Na(NaReason::NoData)
        } else {
            MetricValue::Value(self.sum / self.count as f64)
        }
    }
}

#[derive(Default, Clone, Copy)]
struct SideAcc {
    he_variance: MeanAcc,
    he_var: MeanAcc,
    he_semivariance: MeanAcc,
    stdev_unhedged: MeanAcc,
    stdev_hedged: MeanAcc,
    skewness_unhedged: MeanAcc,
    skewness_hedged: MeanAcc,
    kurtosis_unhedged: MeanAcc,
    kurtosis_hedged: MeanAcc,
}

impl SideAcc {
    fn push(&mut self, side: &SideMetrics) {
        self.he_variance.push(side.he_variance);
        self.he_var.push_metric(side.he_var);
        self.he_semivariance.push_metric(side.he_semivariance);
        self.stdev_unhedged.push(side.unhedged.stdev);
        self.stdev_hedged.push(side.hedged.stdev);
        self.skewness_unhedged.push_metric(side.unhedged.skewness);
        self.skewness_hedged.push_metric(side.hedged.skewness);
        self.kurtosis_unhedged.push_metric(side.unhedged.kurtosis);
        self.kurtosis_hedged.push_metric(side.hedged.kurtosis);
    }

    fn finish(&self) -> AveragedSide {
        AveragedSide {
            he_variance: self.he_variance.mean(),
            he_var: self.he_var.mean(),
            he_semivariance: self.he_semivariance.mean(),
            stdev_unhedged: self.stdev_unhedged.mean(),
            stdev_hedged: self.stdev_hedged.mean(),
            skewness_unhedged: self.skewness_unhedged.mean(),
            skewness_hedged: self.skewness_hedged.mean(),
            kurtosis_unhedged: self.kurtosis_unhedged.mean(),
            kurtosis_hedged: self.kurtosis_hedged.mean(),
        }
    }
}

/// Averages scale outcomes across windows. With `with_oos` only windows
/// where both sample sides were estimated contribute, keeping the in- and
/// out-of-sample columns comparable; otherwise every in-sample side counts
/// and the out-of-sample block is omitted.
fn average_scales<'a, I>(windows: I, levels: usize, with_oos: bool) -> Vec<ScaleAverages>
where
    I: Iterator<Item = &'a HedgeResult>,
{
    let mut ratio = vec![MeanAcc::default(); levels + 1];
    let mut usable = vec![0usize; levels + 1];
    let mut in_acc = vec![SideAcc::default(); levels + 1];
    let mut out_acc = vec![SideAcc::default(); levels + 1];

    for result in windows {
        for outcome in &result.scales {
            let Some(hedge) = outcome.usable() else {
                continue;
            };
            let s = hedge.scale;
            if with_oos {
                let Some(side) = hedge.out_of_sample.metrics() else {
                    continue;
                };
                out_acc[s].push(side);
            }
            usable[s] += 1;
            ratio[s].push(hedge.hedge_ratio);
            in_acc[s].push(&hedge.in_sample);
        }
    }

    (0..=levels)
        .map(|scale| ScaleAverages {
            scale,
            windows: usable[scale],
            hedge_ratio: ratio[scale].mean(),
            in_sample: in_acc[scale].finish(),
            out_of_sample: with_oos.then(|| out_acc[scale].finish()),
        })
        .collect()
}

/// Static hedge ratio per scale from the entire series (no windowing).
pub fn static_hedge_ratios(
    spot: &[f64],
    futures: &[f64],
    config: &HedgeConfig,
) -> Result<Vec<MetricValue>> {
    let filter = filter_table(config.filter);
    let spot_dec = modwt(spot, &filter, config.levels)?;
    let futures_dec = modwt(futures, &filter, config.levels)?;
    let mut out = Vec::with_capacity(config.levels + 1);
    for scale in 0..=config.levels {
        let ratio = if scale == 0 {
            min_variance_ratio(spot, futures, 1, Centering::SampleMean)
        } else {
            min_variance_ratio(
                spot_dec.detail(scale),
                futures_dec.detail(scale),
                equivalent_filter_width(filter.width(), scale),
                Centering::Zero,
            )
        };
        match ratio {
            Ok(h) => out.push(MetricValue::Value(h)),
            Err(e) => match na_reason_for(&e) {
                Some(reason) => out.push(MetricValue::Na(reason)),
                None => return Err(e),
            },
        }
    }
    Ok(out)
}

/// Runs the rolling multiscale study over the whole series.
///
/// Window starts advance by `config.stride`. Windows whose out-of-sample
/// stretch fits produce full results; later starts whose in-sample window
/// still fits are evaluated in-sample only and enter just the in-sample
/// averages. Windows are independent and evaluated in parallel; outputs are
/// merged in window order, so results are identical for any thread count.
pub fn run_rolling_study(
    spot: &[f64],
    futures: &[f64],
    config: &HedgeConfig,
) -> Result<RollingStudy> {
    config.validate()?;
    if spot.len() != futures.len() {
        return Err(Error::LengthMismatch {
            left: spot.len(),
            right: futures.len(),
        });
    }
    let n = spot.len();
    let required = config.window + config.oos_window;
    if n < required {
        return Err(Error::InsufficientData {
            required,
            actual: n,
        });
    }

    let full_starts: Vec<usize> = (0..=n - required).step_by(config.stride).collect();
    let results: Vec<HedgeResult> = full_starts
        .par_iter()
        .map(|&start| evaluate_window(spot, futures, config, start, true))
        .collect::<Result<_>>()?;

    // keep walking the same stride grid while the in-sample window fits
    let tail_starts: Vec<usize> = (0..=n - config.window)
        .step_by(config.stride)
        .skip_while(|&s| s + required <= n)
        .collect();
    let insample_tail: Vec<HedgeResult> = tail_starts
        .par_iter()
        .map(|&start| evaluate_window(spot, futures, config, start, false))
        .collect::<Result<_>>()?;

    let averages_strict = average_scales(results.iter(), config.levels, true);
    let averages_insample = average_scales(
        results.iter().chain(insample_tail.iter()),
        config.levels,
        false,
    );
    let static_ratios = static_hedge_ratios(spot, futures, config)?;

    Ok(RollingStudy {
        results,
        insample_tail,
        averages_strict,
        averages_insample,
        static_ratios,
    })
}
