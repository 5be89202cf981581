//! Dated price series, log returns, subsampling and rolling windows.
//!
//! Calendar gaps are not interpolated: the series is treated as an evenly
//! indexed sequence of trading observations, and all window arithmetic is in
//! observation units.

use std::io::Read;
use std::ops::Range;

use chrono::NaiveDate;

use crate::error::{Error, Result};

/// A strictly positive price series with strictly increasing dates.
#[derive(Debug, Clone, PartialEq)]
pub struct PriceSeries {
    dates: Vec<NaiveDate>,
    values: Vec<f64>,
}

impl PriceSeries {
    /// Validates and wraps a dated price vector.
    ///
    /// Requires at least two observations, strictly increasing dates and
    /// strictly positive, finite prices; the offending date is named on
    /// rejection.
    pub fn new(dates: Vec<NaiveDate>, values: Vec<f64>) -> Result<Self> {
        if dates.len() != values.len() {
            return Err(Error::LengthMismatch {
                left: dates.len(),
                right: values.len(),
            });
        }
        if values.len() < 2 {
            return Err(Error::TooShort {
                len: values.len(),
                min: 2,
            });
        }
        for (date, value) in dates.iter().zip(&values) {
            if !(value.is_finite() && *value > 0.0) {
                return Err(Error::NonPositivePrice {
                    date: *date,
                    value: *value,
                });
            }
        }
        for pair in dates.windows(2) {
            if pair[1] <= pair[0] {
                return Err(Error::NonIncreasingDates { date: pair[1] });
            }
        }
        Ok(Self { dates, values })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn dates(&self) -> &[NaiveDate] {
        &self.dates
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Natural-log differences of consecutive prices; the return dated `t`
    /// covers the move into `t`.
    pub fn log_returns(&self) -> ReturnSeries {
        let values = self
            .values
            .windows(2)
            .map(|p| (p[1] / p[0]).ln())
            .collect();
        ReturnSeries {
            dates: self.dates[1..].to_vec(),
            values,
            horizon: 1,
        }
    }

    /// Log returns of prices kept every `step` observations, anchored at
    /// index 0; a trailing partial stretch is dropped.
    pub fn subsample_returns(&self, step: usize) -> Result<ReturnSeries> {
        if step == 0 {
            return Err(Error::ZeroParameter { what: "step" });
        }
        if self.len() < step + 1 {
            return Err(Error::StepTooCoarse {
                step,
                min: step + 1,
                len: self.len(),
            });
        }
        let kept: Vec<usize> = (0..self.len()).step_by(step).collect();
        let values = kept
            .windows(2)
            .map(|k| (self.values[k[1]] / self.values[k[0]]).ln())
            .collect();
        let dates = kept[1..].iter().map(|&k| self.dates[k]).collect();
        Ok(ReturnSeries {
            dates,
            values,
            horizon: step,
        })
    }
}

/// Log returns at a fixed sampling horizon (1 = every observation).
#[derive(Debug, Clone, PartialEq)]
pub struct ReturnSeries {
    dates: Vec<NaiveDate>,
    values: Vec<f64>,
    horizon: usize,
}

impl ReturnSeries {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn dates(&self) -> &[NaiveDate] {
        &self.dates
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }
}

/// Enumerates `[i, i + window)` for `i = 0, stride, 2·stride, …` while the
/// window fits; yields `floor((len − window)/stride) + 1` ranges.
pub fn rolling_windows(len: usize, window: usize, stride: usize) -> Result<RollingWindows> {
    if window == 0 {
        return Err(Error::ZeroParameter { what: "window" });
    }
    if stride == 0 {
        return Err(Error::ZeroParameter { what: "stride" });
    }
    if window > len {
        return Err(Error::WindowTooLong { window, len });
    }
    Ok(RollingWindows {
        next: 0,
        last: len - window,
        window,
        stride,
        done: false,
    })
}

#[derive(Debug, Clone)]
pub struct RollingWindows {
    next: usize,
    last: usize,
    window: usize,
    stride: usize,
    done: bool,
}

impl Iterator for RollingWindows {
    type Item = Range<usize>;

    fn next(&mut self) -> Option<Range<usize>> {
        if self.done || self.next > self.last {
            self.done = true;
            return None;
        }
        let start = self.next;
        match self.next.checked_add(self.stride) {
            Some(n) => self.next = n,
            None => self.done = true,
        }
        Some(start..start + self.window)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = if self.done || self.next > self.last {
            0
        } else {
            (self.last - self.next) / self.stride + 1
        };
        (n, Some(n))
    }
}

impl ExactSizeIterator for RollingWindows {}

/// Rejects paired series whose date vectors are not identical.
pub fn ensure_aligned(spot: &PriceSeries, futures: &PriceSeries) -> Result<()> {
    if spot.len() != futures.len() {
        return Err(Error::LengthMismatch {
            left: spot.len(),
            right: futures.len(),
        });
    }
    for (index, (a, b)) in spot.dates().iter().zip(futures.dates()).enumerate() {
        if a != b {
            return Err(Error::DateMismatch {
                index,
                left: *a,
                right: *b,
            });
        }
    }
    Ok(())
}

fn csv_reader<R: Read>(input: R) -> csv::Reader<R> {
    csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(input)
}

fn parse_date(text: &str, row: usize) -> Result<NaiveDate> {
    text.parse().map_err(|_| Error::Csv {
        row,
        message: format!("'{text}' is not an ISO-8601 date"),
    })
}

fn parse_price(text: &str, row: usize, column: &str) -> Result<f64> {
    text.parse().map_err(|_| Error::Csv {
        row,
        message: format!("'{text}' is not a decimal {column}"),
    })
}

fn check_header(actual: &csv::StringRecord, expected: &[&str]) -> Result<()> {
    let ok = actual.len() == expected.len()
        && actual
            .iter()
            .zip(expected)
            .all(|(a, e)| a.eq_ignore_ascii_case(e));
    if !ok {
        return Err(Error::Csv {
            row: 1,
            message: format!(
                "expected header '{}', found '{}'",
                expected.join(","),
                actual.iter().collect::<Vec<_>>().join(",")
            ),
        });
    }
    Ok(())
}

/// Reads a `date,price` CSV into a validated [`PriceSeries`].
///
/// Rows must be sorted ascending by date; any parse failure names the
/// offending row (the header is row 1).
pub fn read_price_csv<R: Read>(input: R) -> Result<PriceSeries> {
    let mut reader = csv_reader(input);
    check_header(
        reader.headers().map_err(|e| Error::Csv {
            row: 1,
            message: e.to_string(),
        })?,
        &["date", "price"],
    )?;
    let mut dates = Vec::new();
    let mut values = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let row = i + 2;
        let record = record.map_err(|e| Error::Csv {
            row,
            message: e.to_string(),
        })?;
        if record.len() != 2 {
            return Err(Error::Csv {
                row,
                message: format!("expected 2 fields, found {}", record.len()),
            });
        }
        dates.push(parse_date(&record[0], row)?);
        values.push(parse_price(&record[1], row, "price")?);
    }
    PriceSeries::new(dates, values)
}

/// Reads a combined `date,spot,futures` CSV into an aligned pair of series.
pub fn read_pair_csv<R: Read>(input: R) -> Result<(PriceSeries, PriceSeries)> {
    let mut reader = csv_reader(input);
    check_header(
        reader.headers().map_err(|e| Error::Csv {
            row: 1,
            message: e.to_string(),
        })?,
        &["date", "spot", "futures"],
    )?;
    let mut dates = Vec::new();
    let mut spot = Vec::new();
    let mut futures = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let row = i + 2;
        let record = record.map_err(|e| Error::Csv {
            row,
            message: e.to_string(),
        })?;
        if record.len() != 3 {
            return Err(Error::Csv {
                row,
                message: format!("expected 3 fields, found {}", record.len()),
            });
        }
        dates.push(parse_date(&record[0], row)?);
        spot.push(parse_price(&record[1], row, "spot price")?);
        futures.push(parse_price(&record[2], row, "futures price")?);
    }
    let spot = PriceSeries::new(dates.clone(), spot)?;
    let futures = PriceSeries::new(dates, futures)?;
    Ok((spot, futures))
}
