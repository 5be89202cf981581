//! Value-or-NA cells for result rows.
//!
//! Metrics that cannot be computed for a window or scale are carried as an
//! explicit [`NaReason`] rather than being dropped or zeroed, so every NA in
//! an output table has a machine-readable cause.

/// Machine-readable reason code attached to every NA cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NaReason {
    /// Equivalent filter width exceeds the window; no non-boundary coefficients.
    ScaleTooWide,
    /// Futures variance is zero, so no minimum-variance ratio exists.
    ZeroFuturesVariance,
    /// Unhedged variance is zero, so effectiveness is undefined.
    ZeroUnhedgedVariance,
    /// Zero variance makes skewness/kurtosis undefined.
    ZeroVariance,
    /// Unhedged VaR is not positive, so VaR reduction is not applicable.
    VarNonPositive,
    /// Unhedged semivariance is zero.
    ZeroSemivariance,
    /// Too few observations for the estimator.
    TooFewObservations,
    /// No out-of-sample window fits after this in-sample window.
    OutOfSampleUnavailable,
    /// Nothing to average over.
    NoData,
}

impl NaReason {
    pub fn code(&self) -> &'static str {
        match self {
            NaReason::ScaleTooWide => "scale-too-wide",
            NaReason::ZeroFuturesVariance => "zero-futures-variance",
            NaReason::ZeroUnhedgedVariance => "zero-unhedged-variance",
            NaReason::ZeroVariance => "zero-variance",
            NaReason::VarNonPositive => "var-non-positive",
            NaReason::ZeroSemivariance => "zero-semivariance",
            NaReason::TooFewObservations => "too-few-observations",
            NaReason::OutOfSampleUnavailable => "oos-unavailable",
            NaReason::NoData => "no-data",
        }
    }
}

/// A metric that is either a finite value or an explained NA.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MetricValue {
    Value(f64),
    Na(NaReason),
}

impl MetricValue {
    pub fn from_option(value: Option<f64>, reason: NaReason) -> Self {
        match value {
            Some(v) => MetricValue::Value(v),
            None => MetricValue::Na(reason),
        }
    }

    pub fn value(&self) -> Option<f64> {
        match self {
            MetricValue::Value(v) => Some(*v),
            MetricValue::Na(_) => None,
        }
    }

    pub fn is_na(&self) -> bool {
        matches!(self, MetricValue::Na(_))
    }
}
