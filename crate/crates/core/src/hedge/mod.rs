//! Minimum-variance hedging across wavelet scales.
//!
//! A hedge window is evaluated scale by scale: the spot and futures slices
//! are decomposed independently, the ratio `Cov/Var(futures)` is estimated
//! from the non-boundary coefficients at each scale (raw returns are
//! "scale 0" and use mean-subtracted moments), and effectiveness is measured
//! on the coefficient-level portfolio `D̃^s − h·D̃^f`. The out-of-sample
//! window is decomposed on its own and re-scored with the frozen in-sample
//! ratio, dropping its own boundary coefficients.
//!
//! Scales that cannot be estimated — filter wider than the window, zero
//! futures variance — are carried as explicit markers, never dropped
//! silently.

mod rolling;
mod subsample;

pub use rolling::{
    run_rolling_study, static_hedge_ratios, AveragedSide, RollingStudy, ScaleAverages,
};
pub use subsample::{run_subsampled_study, SubsampleRow, SubsampleStudy, SubsampleWindowRow};

use crate::effectiveness::effectiveness_report;
use crate::error::{Error, Result};
use crate::metric::{MetricValue, NaReason};
use crate::moments::{covariance, moment_summary, variance, Centering, MomentSummary};
use crate::wavelet::{equivalent_filter_width, filter_table, modwt, FilterKind};

/// Parameters of the rolling multiscale study.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HedgeConfig {
    /// In-sample window length in observations.
    pub window: usize,
    /// Step between successive window starts.
    pub stride: usize,
    /// Largest decomposition level `J`.
    pub levels: usize,
    pub filter: FilterKind,
    /// Out-of-sample window length in observations.
    pub oos_window: usize,
    /// VaR confidence level.
    pub alpha: f64,
}

impl Default for HedgeConfig {
    fn default() -> Self {
        Self {
            window: 1000,
            stride: 1,
            levels: 6,
            filter: FilterKind::La8,
            oos_window: 1000,
            alpha: 0.95,
        }
    }
}

impl HedgeConfig {
    pub fn validate(&self) -> Result<()> {
        for (value, what) in [
            (self.window, "window"),
            (self.stride, "stride"),
            (self.levels, "levels"),
            (self.oos_window, "out-of-sample window"),
        ] {
            if value == 0 {
                return Err(Error::ZeroParameter { what });
            }
        }
        if self.levels > crate::wavelet::MAX_LEVELS {
            return Err(Error::TooManyLevels {
                levels: self.levels,
                max: crate::wavelet::MAX_LEVELS,
            });
        }
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(Error::InvalidAlpha { alpha: self.alpha });
        }
        Ok(())
    }
}

/// Minimum-variance hedge ratio `Cov(spot, futures)/Var(futures)` over the
/// non-boundary tail; zero futures variance has no defined ratio.
pub fn min_variance_ratio(
    spot: &[f64],
    futures: &[f64],
    width: usize,
    centering: Centering,
) -> Result<f64> {
    let futures_variance = variance(futures, width, centering)?;
    if futures_variance == 0.0 {
        return Err(Error::ZeroFuturesVariance);
    }
    Ok(covariance(spot, futures, width, centering)? / futures_variance)
}

/// Hedge portfolio returns `spot_t − h·futures_t`.
pub fn hedge_portfolio(spot: &[f64], futures: &[f64], ratio: f64) -> Result<Vec<f64>> {
    if spot.len() != futures.len() {
        return Err(Error::LengthMismatch {
            left: spot.len(),
            right: futures.len(),
        });
    }
    Ok(spot
        .iter()
        .zip(futures)
        .map(|(s, f)| s - ratio * f)
        .collect())
}

/// Effectiveness and distribution metrics of one sample side at one scale.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SideMetrics {
    /// Non-boundary observations the metrics are computed over.
    pub observations: usize,
    pub he_variance: f64,
    pub he_var: MetricValue,
    pub he_semivariance: MetricValue,
    pub unhedged: MomentSummary,
    pub hedged: MomentSummary,
}

/// An out-of-sample side that may be individually unavailable even when the
/// in-sample side was estimated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SideOutcome {
    Metrics(SideMetrics),
    Na(NaReason),
}

impl SideOutcome {
    pub fn metrics(&self) -> Option<&SideMetrics> {
        match self {
            SideOutcome::Metrics(m) => Some(m),
            SideOutcome::Na(_) => None,
        }
    }

    pub fn na_reason(&self) -> Option<NaReason> {
        match self {
            SideOutcome::Metrics(_) => None,
            SideOutcome::Na(reason) => Some(*reason),
        }
    }
}

/// One estimated scale of a hedge window.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaleHedge {
    /// 0 = raw returns, `1..=J` = wavelet scales.
    pub scale: usize,
    pub hedge_ratio: f64,
    pub in_sample: SideMetrics,
    pub out_of_sample: SideOutcome,
}

/// A scale either estimated or marked unusable with its reason.
#[derive(Debug, Clone, Copy, PartialEq)]
#[allow(clippy::large_enum_variant)] // scale count is small and fixed; boxing buys nothing
pub enum ScaleOutcome {
    Usable(ScaleHedge),
    Unusable { scale: usize, reason: NaReason },
}

impl ScaleOutcome {
    pub fn scale(&self) -> usize {
        match self {
            ScaleOutcome::Usable(h) => h.scale,
            ScaleOutcome::Unusable { scale, .. } => *scale,
        }
    }

    pub fn usable(&self) -> Option<&ScaleHedge> {
        match self {
            ScaleOutcome::Usable(h) => Some(h),
            ScaleOutcome::Unusable { .. } => None,
        }
    }
}

/// All scales of one rolling window.
#[derive(Debug, Clone, PartialEq)]
pub struct HedgeResult {
    pub window_start: usize,
    /// Outcomes for scales `0..=J` in order.
    pub scales: Vec<ScaleOutcome>,
}

fn na_reason_for(error: &Error) -> Option<NaReason> {
    match error {
        Error::ScaleTooWide { .. } => Some(NaReason::ScaleTooWide),
        Error::ZeroFuturesVariance => Some(NaReason::ZeroFuturesVariance),
        Error::ZeroVariance { .. } => Some(NaReason::ZeroUnhedgedVariance),
        Error::TooFewObservations { .. } => Some(NaReason::TooFewObservations),
        _ => None,
    }
}

fn evaluate_side(
    spot_coeffs: &[f64],
    futures_coeffs: &[f64],
    ratio: f64,
    width: usize,
    centering: Centering,
    alpha: f64,
) -> Result<SideMetrics> {
    let portfolio = hedge_portfolio(spot_coeffs, futures_coeffs, ratio)?;
    let report = effectiveness_report(&portfolio, spot_coeffs, width, centering, alpha)?;
    Ok(SideMetrics {
        observations: spot_coeffs.len() - width + 1,
        he_variance: report.he_variance,
        he_var: report.he_var,
        he_semivariance: report.he_semivariance,
        unhedged: moment_summary(spot_coeffs, width, centering)?,
        hedged: moment_summary(&portfolio, width, centering)?,
    })
}

/// Evaluates one window; `with_oos = false` marks every out-of-sample side
/// as unavailable instead of reading past the series.
pub(crate) fn evaluate_window(
    spot: &[f64],
    futures: &[f64],
    config: &HedgeConfig,
    window_start: usize,
    with_oos: bool,
) -> Result<HedgeResult> {
    let in_end = window_start + config.window;
    let spot_in = &spot[window_start..in_end];
    let futures_in = &futures[window_start..in_end];

    let filter = filter_table(config.filter);
    let spot_dec = modwt(spot_in, &filter, config.levels)?;
    let futures_dec = modwt(futures_in, &filter, config.levels)?;

    let oos = if with_oos {
        let oos_end = in_end + config.oos_window;
        let spot_oos = &spot[in_end..oos_end];
        let futures_oos = &futures[in_end..oos_end];
        Some((
            spot_oos,
            futures_oos,
            modwt(spot_oos, &filter, config.levels)?,
            modwt(futures_oos, &filter, config.levels)?,
        ))
    } else {
        None
    };

    let mut scales = Vec::with_capacity(config.levels + 1);
    for scale in 0..=config.levels {
        let (spot_co, futures_co, width, centering) = if scale == 0 {
            (spot_in, futures_in, 1, Centering::SampleMean)
        } else {
            (
                spot_dec.detail(scale),
                futures_dec.detail(scale),
                equivalent_filter_width(filter.width(), scale),
                Centering::Zero,
            )
        };

        let estimated = min_variance_ratio(spot_co, futures_co, width, centering)
            .and_then(|ratio| {
                evaluate_side(spot_co, futures_co, ratio, width, centering, config.alpha)
                    .map(|side| (ratio, side))
            });
        let (ratio, in_sample) = match estimated {
            Ok(pair) => pair,
            Err(e) => match na_reason_for(&e) {
                Some(reason) => {
                    scales.push(ScaleOutcome::Unusable { scale, reason });
                    continue;
                }
                None => return Err(e),
            },
        };

        let out_of_sample = match &oos {
            None => SideOutcome::Na(NaReason::OutOfSampleUnavailable),
            Some((spot_oos, futures_oos, spot_dec_oos, futures_dec_oos)) => {
                let (s_co, f_co) = if scale == 0 {
                    (*spot_oos, *futures_oos)
                } else {
                    (spot_dec_oos.detail(scale), futures_dec_oos.detail(scale))
                };
                match evaluate_side(s_co, f_co, ratio, width, centering, config.alpha) {
                    Ok(side) => SideOutcome::Metrics(side),
                    Err(e) => match na_reason_for(&e) {
                        Some(reason) => SideOutcome::Na(reason),
                        None => return Err(e),
                    },
                }
            }
        };

        scales.push(ScaleOutcome::Usable(ScaleHedge {
            scale,
            hedge_ratio: ratio,
            in_sample,
            out_of_sample,
        }));
    }

    Ok(HedgeResult {
        window_start,
        scales,
    })
}

/// Scores one in-sample window and the following out-of-sample window at
/// every scale, per the rolling-study protocol.
pub fn run_multiscale_window(
    spot: &[f64],
    futures: &[f64],
    config: &HedgeConfig,
    window_start: usize,
) -> Result<HedgeResult> {
    config.validate()?;
    if spot.len() != futures.len() {
        return Err(Error::LengthMismatch {
            left: spot.len(),
            right: futures.len(),
        });
    }
    let required = window_start + config.window + config.oos_window;
    if required > spot.len() {
        return Err(Error::InsufficientData {
            required,
            actual: spot.len(),
        });
    }
    evaluate_window(spot, futures, config, window_start, true)
}
