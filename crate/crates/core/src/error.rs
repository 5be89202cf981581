//! Crate-wide error type.

use chrono::NaiveDate;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("price on {date} is {value}, but prices must be strictly positive")]
    NonPositivePrice { date: NaiveDate, value: f64 },

    #[error("dates must be strictly increasing; {date} does not advance the series")]
    NonIncreasingDates { date: NaiveDate },

    #[error("series has {len} observations but at least {min} are required")]
    TooShort { len: usize, min: usize },

    #[error("csv row {row}: {message}")]
    Csv { row: usize, message: String },

    #[error("paired series disagree at index {index}: {left} vs {right}")]
    DateMismatch {
        index: usize,
        left: NaiveDate,
        right: NaiveDate,
    },

    #[error("paired series have different lengths: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("subsample step {step} needs at least {min} prices, found {len}")]
    StepTooCoarse { step: usize, min: usize, len: usize },

    #[error("window {window} exceeds series length {len}")]
    WindowTooLong { window: usize, len: usize },

    #[error("{what} must be at least 1")]
    ZeroParameter { what: &'static str },

    #[error("unknown wavelet filter '{name}' (supported: haar, d4, la8, c10)")]
    UnknownFilter { name: String },

    #[error("input contains a non-finite value at index {index}")]
    NonFinite { index: usize },

    #[error("filter width {width} exceeds series length {len}; no non-boundary coefficients")]
    ScaleTooWide { width: usize, len: usize },

    #[error("{levels} decomposition levels exceed the supported maximum of {max}")]
    TooManyLevels { levels: usize, max: usize },

    #[error("moment undefined: {what} has zero variance")]
    ZeroVariance { what: &'static str },

    #[error("futures variance is zero; no hedge ratio is defined")]
    ZeroFuturesVariance,

    #[error("{what} needs at least {min} observations, found {n}")]
    TooFewObservations {
        what: &'static str,
        n: usize,
        min: usize,
    },

    #[error("confidence level must lie strictly between 0 and 1, got {alpha}")]
    InvalidAlpha { alpha: f64 },

    #[error("rolling study needs at least {required} observations, found {actual}")]
    InsufficientData { required: usize, actual: usize },

    #[error("horizon {horizon} leaves only {points} points per window; at least 4 are required")]
    HorizonTooCoarse { horizon: usize, points: usize },

    #[error("decomposition is inconsistent: {message}")]
    MalformedDecomposition { message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
