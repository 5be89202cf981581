//! Moment estimators.
//!
//! Wavelet moments follow the unbiased non-boundary convention: only the
//! `M_j = N − L_j + 1` coefficients unaffected by the circular extension
//! enter the sums, and no sample mean is subtracted (the coefficients have
//! zero mean by construction). Classical statistics on raw returns do
//! subtract the sample mean. All moments are population-style (divide by the
//! observation count), and kurtosis is reported raw, so 3 is Gaussian.

use crate::error::{Error, Result};
use crate::metric::{MetricValue, NaReason};
use crate::wavelet::nonboundary_range;

/// Which center the moments are taken about.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Centering {
    /// Moments about zero — the wavelet-coefficient convention.
    Zero,
    /// Moments about the sample mean — the raw-return convention.
    SampleMean,
}

fn center_of(x: &[f64], centering: Centering) -> f64 {
    match centering {
        Centering::Zero => 0.0,
        Centering::SampleMean => x.iter().sum::<f64>() / x.len() as f64,
    }
}

/// Variance of `x[width−1..]` about the chosen center; `width = 1` covers
/// the whole vector.
pub fn variance(x: &[f64], width: usize, centering: Centering) -> Result<f64> {
    let range = nonboundary_range(x.len(), width)?;
    let slice = &x[range];
    let center = center_of(slice, centering);
    let m = slice.len() as f64;
    Ok(slice.iter().map(|v| (v - center) * (v - center)).sum::<f64>() / m)
}

/// Covariance of the paired tail slices about the chosen center.
pub fn covariance(x: &[f64], y: &[f64], width: usize, centering: Centering) -> Result<f64> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    let range = nonboundary_range(x.len(), width)?;
    let (xs, ys) = (&x[range.clone()], &y[range]);
    let (cx, cy) = (center_of(xs, centering), center_of(ys, centering));
    let m = xs.len() as f64;
    Ok(xs
        .iter()
        .zip(ys)
        .map(|(a, b)| (a - cx) * (b - cy))
        .sum::<f64>()
        / m)
}

/// Unbiased wavelet variance: `(1/M_j) Σ_{t=L_j−1}^{N−1} D̃²_{j,t}`.
pub fn wavelet_variance(detail: &[f64], width: usize) -> Result<f64> {
    variance(detail, width, Centering::Zero)
}

/// Wavelet skewness: third zero-mean moment over non-boundary coefficients,
/// normalised by σ³.
pub fn wavelet_skewness(detail: &[f64], width: usize) -> Result<f64> {
    let range = nonboundary_range(detail.len(), width)?;
    let slice = &detail[range];
    let m = slice.len() as f64;
    let m2 = slice.iter().map(|v| v * v).sum::<f64>() / m;
    if m2 == 0.0 {
        return Err(Error::ZeroVariance {
            what: "wavelet coefficients",
        });
    }
    let m3 = slice.iter().map(|v| v * v * v).sum::<f64>() / m;
    Ok(m3 / m2.powf(1.5))
}

/// Wavelet kurtosis: fourth zero-mean moment over non-boundary coefficients,
/// normalised by σ⁴ (3 = Gaussian).
pub fn wavelet_kurtosis(detail: &[f64], width: usize) -> Result<f64> {
    let range = nonboundary_range(detail.len(), width)?;
    let slice = &detail[range];
    let m = slice.len() as f64;
    let m2 = slice.iter().map(|v| v * v).sum::<f64>() / m;
    if m2 == 0.0 {
        return Err(Error::ZeroVariance {
            what: "wavelet coefficients",
        });
    }
    let m4 = slice.iter().map(|v| v * v * v * v).sum::<f64>() / m;
    Ok(m4 / (m2 * m2))
}

/// Unbiased wavelet covariance: `(1/M_j) Σ_{t=L_j−1}^{N−1} D̃^f_t · D̃^g_t`.
pub fn wavelet_covariance(detail_f: &[f64], detail_g: &[f64], width: usize) -> Result<f64> {
    covariance(detail_f, detail_g, width, Centering::Zero)
}

/// Zero-mean moments of one scale of a decomposition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaleMoments {
    pub level: usize,
    pub variance: f64,
    pub skewness: f64,
    pub kurtosis: f64,
    /// Number of non-boundary coefficients used.
    pub count: usize,
}

/// Bundles the per-scale estimators for detail coefficients at `level`.
pub fn scale_moments(detail: &[f64], width: usize, level: usize) -> Result<ScaleMoments> {
    let count = nonboundary_range(detail.len(), width)?.len();
    Ok(ScaleMoments {
        level,
        variance: wavelet_variance(detail, width)?,
        skewness: wavelet_skewness(detail, width)?,
        kurtosis: wavelet_kurtosis(detail, width)?,
        count,
    })
}

/// Standard deviation plus higher moments, NA-safe for degenerate input.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentSummary {
    pub stdev: f64,
    pub skewness: MetricValue,
    pub kurtosis: MetricValue,
}

/// Moment summary of `x[width−1..]` about the chosen center; zero variance
/// yields NA skewness and kurtosis rather than an error.
pub fn moment_summary(x: &[f64], width: usize, centering: Centering) -> Result<MomentSummary> {
    let range = nonboundary_range(x.len(), width)?;
    let slice = &x[range];
    let center = center_of(slice, centering);
    let m = slice.len() as f64;
    let mut m2 = 0.0;
    let mut m3 = 0.0;
    let mut m4 = 0.0;
    for v in slice {
        let d = v - center;
        let d2 = d * d;
        m2 += d2;
        m3 += d2 * d;
        m4 += d2 * d2;
    }
    m2 /= m;
    m3 /= m;
    m4 /= m;
    if m2 == 0.0 {
        return Ok(MomentSummary {
            stdev: 0.0,
            skewness: MetricValue::Na(NaReason::ZeroVariance),
            kurtosis: MetricValue::Na(NaReason::ZeroVariance),
        });
    }
    Ok(MomentSummary {
        stdev: m2.sqrt(),
        skewness: MetricValue::Value(m3 / m2.powf(1.5)),
        kurtosis: MetricValue::Value(m4 / (m2 * m2)),
    })
}

/// Classical descriptive statistics of a return vector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampleStats {
    pub mean: f64,
    pub stdev: f64,
    pub skewness: f64,
    pub kurtosis: f64,
    pub jarque_bera: f64,
}

/// Mean-subtracted sample moments and the Jarque–Bera statistic.
pub fn sample_stats(x: &[f64]) -> Result<SampleStats> {
    if x.len() < 4 {
        return Err(Error::TooFewObservations {
            what: "sample statistics",
            n: x.len(),
            min: 4,
        });
    }
    let n = x.len() as f64;
    let mean = x.iter().sum::<f64>() / n;
    let mut m2 = 0.0;
    let mut m3 = 0.0;
    let mut m4 = 0.0;
    for v in x {
        let d = v - mean;
        let d2 = d * d;
        m2 += d2;
        m3 += d2 * d;
        m4 += d2 * d2;
    }
    m2 /= n;
    m3 /= n;
    m4 /= n;
    if m2 == 0.0 {
        return Err(Error::ZeroVariance { what: "sample" });
    }
    let skewness = m3 / m2.powf(1.5);
    let kurtosis = m4 / (m2 * m2);
    Ok(SampleStats {
        mean,
        stdev: m2.sqrt(),
        skewness,
        kurtosis,
        jarque_bera: jarque_bera(x.len(), skewness, kurtosis),
    })
}

/// `JB = (n/6)·(S² + (K − 3)²/4)` with raw kurtosis `K`; asymptotically
/// χ²(2) under normality.
pub fn jarque_bera(n: usize, skewness: f64, kurtosis: f64) -> f64 {
    let excess = kurtosis - 3.0;
    (n as f64 / 6.0) * (skewness * skewness + excess * excess / 4.0)
}
