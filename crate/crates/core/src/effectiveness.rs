//! Hedging-performance metrics: variance reduction, empirical Value-at-Risk
//! reduction, and the semivariance variant.
//!
//! Losses are negated returns, so VaR comes out positive for a loss-making
//! tail. A negative VaR (the α-quantile is a profit) propagates as-is and
//! makes VaR reduction not applicable. Out-of-sample variance reduction may
//! be negative; nothing is clamped anywhere.

use crate::error::{Error, Result};
use crate::metric::{MetricValue, NaReason};
use crate::moments::{variance, Centering};
use crate::wavelet::nonboundary_range;

const VAR_MIN_OBSERVATIONS: usize = 20;

/// Fractional variance reduction `1 − Var(hedged)/Var(unhedged)` over the
/// non-boundary tail; the variance convention must match the series type.
pub fn he_variance(
    hedged: &[f64],
    unhedged: &[f64],
    width: usize,
    centering: Centering,
) -> Result<f64> {
    let unhedged_variance = variance(unhedged, width, centering)?;
    if unhedged_variance == 0.0 {
        return Err(Error::ZeroVariance {
            what: "unhedged returns",
        });
    }
    Ok(1.0 - variance(hedged, width, centering)? / unhedged_variance)
}

/// Empirical Value-at-Risk: the `alpha` quantile of the loss distribution.
///
/// Losses `−x` are sorted ascending and the quantile is read at rank
/// `r = alpha·(n−1) + 1` with linear interpolation between the order
/// statistics either side of `r`.
pub fn value_at_risk(x: &[f64], alpha: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InvalidAlpha { alpha });
    }
    let n = x.len();
    if n < VAR_MIN_OBSERVATIONS {
        return Err(Error::TooFewObservations {
            what: "value-at-risk",
            n,
            min: VAR_MIN_OBSERVATIONS,
        });
    }
    let mut losses: Vec<f64> = x.iter().map(|v| -v).collect();
    losses.sort_unstable_by(f64::total_cmp);
    let rank = alpha * (n - 1) as f64 + 1.0;
    let lower = rank.floor() as usize; // 1-based
    if lower >= n {
        return Ok(losses[n - 1]);
    }
    let fraction = rank - lower as f64;
    Ok(losses[lower - 1] + fraction * (losses[lower] - losses[lower - 1]))
}

/// VaR reduction `1 − VaR_α(hedged)/VaR_α(unhedged)`; not applicable when
/// the unhedged VaR is not positive.
pub fn he_var(hedged: &[f64], unhedged: &[f64], alpha: f64) -> Result<MetricValue> {
    let unhedged_var = value_at_risk(unhedged, alpha)?;
    if unhedged_var <= 0.0 {
        return Ok(MetricValue::Na(NaReason::VarNonPositive));
    }
    let hedged_var = value_at_risk(hedged, alpha)?;
    Ok(MetricValue::Value(1.0 - hedged_var / unhedged_var))
}

/// Mean squared shortfall below `target`.
pub fn semivariance(x: &[f64], target: f64) -> f64 {
    let n = x.len() as f64;
    x.iter()
        .map(|v| {
            let short = (v - target).min(0.0);
            short * short
        })
        .sum::<f64>()
        / n
}

/// Semivariance reduction `1 − SV(hedged)/SV(unhedged)`; not applicable when
/// the unhedged series never falls below the target.
pub fn he_semivariance(hedged: &[f64], unhedged: &[f64], target: f64) -> Result<MetricValue> {
    if unhedged.is_empty() || hedged.len() != unhedged.len() {
        return Err(Error::LengthMismatch {
            left: hedged.len(),
            right: unhedged.len(),
        });
    }
    let unhedged_sv = semivariance(unhedged, target);
    if unhedged_sv == 0.0 {
        return Ok(MetricValue::Na(NaReason::ZeroSemivariance));
    }
    Ok(MetricValue::Value(
        1.0 - semivariance(hedged, target) / unhedged_sv,
    ))
}

/// All effectiveness metrics of one hedged/unhedged pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EffectivenessReport {
    pub he_variance: f64,
    pub var_alpha_unhedged: MetricValue,
    pub var_alpha_hedged: MetricValue,
    pub he_var: MetricValue,
    pub he_semivariance: MetricValue,
}

/// Evaluates every metric over the non-boundary tails of a coefficient (or
/// raw-return, `width = 1`) pair.
pub fn effectiveness_report(
    hedged: &[f64],
    unhedged: &[f64],
    width: usize,
    centering: Centering,
    alpha: f64,
) -> Result<EffectivenessReport> {
    if hedged.len() != unhedged.len() {
        return Err(Error::LengthMismatch {
            left: hedged.len(),
            right: unhedged.len(),
        });
    }
    let range = nonboundary_range(hedged.len(), width)?;
    let hedged_tail = &hedged[range.clone()];
    let unhedged_tail = &unhedged[range];

    let he_var_value = he_variance(hedged, unhedged, width, centering)?;

    let (var_unhedged, var_hedged, var_reduction) = if hedged_tail.len() < VAR_MIN_OBSERVATIONS {
        let na = MetricValue::Na(NaReason::TooFewObservations);
        (na, na, na)
    } else {
        let unhedged_q = value_at_risk(unhedged_tail, alpha)?;
        let hedged_q = value_at_risk(hedged_tail, alpha)?;
        let reduction = if unhedged_q <= 0.0 {
            MetricValue::Na(NaReason::VarNonPositive)
        } else {
            MetricValue::Value(1.0 - hedged_q / unhedged_q)
        };
        (
            MetricValue::Value(unhedged_q),
            MetricValue::Value(hedged_q),
            reduction,
        )
    };

    Ok(EffectivenessReport {
        he_variance: he_var_value,
        var_alpha_unhedged: var_unhedged,
        var_alpha_hedged: var_hedged,
        he_var: var_reduction,
        he_semivariance: he_semivariance(hedged_tail, unhedged_tail, 0.0)?,
    })
}
