//! Base wavelet filter pairs, rescaled for the maximal overlap transform.
//!
//! Each filter is stored as its scaling (father) coefficients g̃_l with the
//! wavelet (mother) coefficients derived through the quadrature-mirror
//! relation h̃_l = (−1)^l · g̃_{L−1−l}.  The rescaled convention makes
//!
//!   sum(g̃) = 1,   sum(h̃) = 0,   sum(g̃²) = sum(h̃²) = 1/2
//!
//! hold for every filter; unit tests gate all four identities at 1e−12.
//! Coefficients are embedded to 17 significant digits from a high-precision
//! solve of the defining orthonormality and vanishing-moment equations, so
//! the identities hold to roughly machine precision.

// coefficient literals carry 17 significant digits so the stored doubles
// are the correctly rounded values
#![allow(clippy::excessive_precision)]

use crate::error::{Error, Result};

/// Width-2 Haar pair.
const HAAR: [f64; 2] = [0.5, 0.5];

/// 4-tap Daubechies extremal-phase scaling filter; closed form (1±√3)/8,
/// (3±√3)/8.
const D4: [f64; 4] = [
    0.34150635094610966,
    0.59150635094610966,
    0.15849364905389034,
    -0.091506350946109662,
];

/// 8-tap Daubechies least-asymmetric (symmlet) scaling filter.
const LA8: [f64; 8] = [
    -0.053574450709102909,
    -0.020955482562529764,
    0.35186953432814994,
    0.56832912170382036,
    0.21061726710178854,
    -0.070158812089271724,
    -0.0089123507208355776,
    0.022785172947981129,
];

/// 12-tap Coiflet scaling filter (the member of the Coiflet family closest
/// to the `c10` label; no 10-tap Coiflet exists).
const C10: [f64; 12] = [
    -0.00050950539910764415,
    -0.0012892033561406595,
    0.0039678836129620121,
    0.016744410163279506,
    -0.042026480460771607,
    -0.05408560709171143,
    0.29486719369561919,
    0.57468239385686385,
    0.27302104653476661,
    -0.047639590311008132,
    -0.029320137983468564,
    0.011587596738716868,
];

/// The supported base filters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FilterKind {
    Haar,
    D4,
    La8,
    C10,
}

impl FilterKind {
    pub const ALL: [FilterKind; 4] = [
        FilterKind::Haar,
        FilterKind::D4,
        FilterKind::La8,
        FilterKind::C10,
    ];

    /// Parses a case-insensitive filter name.
    pub fn parse(name: &str) -> Result<Self> {
        match name.to_ascii_lowercase().as_str() {
            "haar" => Ok(FilterKind::Haar),
            "d4" => Ok(FilterKind::D4),
            "la8" => Ok(FilterKind::La8),
            "c10" => Ok(FilterKind::C10),
            _ => Err(Error::UnknownFilter {
                name: name.to_string(),
            }),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            FilterKind::Haar => "haar",
            FilterKind::D4 => "d4",
            FilterKind::La8 => "la8",
            FilterKind::C10 => "c10",
        }
    }

    fn scaling_coefficients(&self) -> &'static [f64] {
        match self {
            FilterKind::Haar => &HAAR,
            FilterKind::D4 => &D4,
            FilterKind::La8 => &LA8,
            FilterKind::C10 => &C10,
        }
    }
}

impl std::fmt::Display for FilterKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// A rescaled scaling/wavelet coefficient pair of width `L`.
#[derive(Debug, Clone, PartialEq)]
pub struct WaveletFilter {
    kind: FilterKind,
    scaling: Vec<f64>,
    wavelet: Vec<f64>,
}

impl WaveletFilter {
    pub fn kind(&self) -> FilterKind {
        self.kind
    }

    /// Base filter width `L` in taps.
    pub fn width(&self) -> usize {
        self.scaling.len()
    }

    /// Rescaled scaling (father) coefficients; sum to 1.
    pub fn scaling(&self) -> &[f64] {
        &self.scaling
    }

    /// Rescaled wavelet (mother) coefficients; sum to 0.
    pub fn wavelet(&self) -> &[f64] {
        &self.wavelet
    }
}

/// Looks up the rescaled coefficient pair for a base filter.
pub fn filter_table(kind: FilterKind) -> WaveletFilter {
    let scaling = kind.scaling_coefficients().to_vec();
    let width = scaling.len();
    let wavelet: Vec<f64> = (0..width)
        .map(|l| {
            let sign = if l % 2 == 0 { 1.0 } else { -1.0 };
            sign * scaling[width - 1 - l]
        })
        .collect();
    let filter = WaveletFilter {
        kind,
        scaling,
        wavelet,
    };
    #[cfg(debug_assertions)]
    verify_identities(&filter);
    filter
}

/// Debug-build gate on the embedded constants: unit sums, half energy and
/// the quadrature-mirror relation must hold to 1e−12.
#[cfg(debug_assertions)]
fn verify_identities(filter: &WaveletFilter) {
    let g = &filter.scaling;
    let h = &filter.wavelet;
    debug_assert!((g.iter().sum::<f64>() - 1.0).abs() < 1e-12, "{}", filter.kind);
    debug_assert!(h.iter().sum::<f64>().abs() < 1e-12, "{}", filter.kind);
    debug_assert!(
        (g.iter().map(|x| x * x).sum::<f64>() - 0.5).abs() < 1e-12,
        "{}",
        filter.kind
    );
    debug_assert!(
        (h.iter().map(|x| x * x).sum::<f64>() - 0.5).abs() < 1e-12,
        "{}",
        filter.kind
    );
}

/// Width of the level-`level` equivalent filter: `(2^level − 1)(L − 1) + 1`.
pub fn equivalent_filter_width(width: usize, level: usize) -> usize {
    debug_assert!(width >= 2, "base filter width must be at least 2");
    debug_assert!(level >= 1, "level must be at least 1");
    ((1usize << level) - 1) * (width - 1) + 1
}

/// Explicitly constructs the level-`level` equivalent (wavelet, scaling)
/// filters by convolving the upsampled base pair with the previous level's
/// scaling filter.
pub fn equivalent_filters(filter: &WaveletFilter, level: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(level >= 1, "level must be at least 1");
    let mut wavelet = filter.wavelet().to_vec();
    let mut scaling = filter.scaling().to_vec();
    for j in 2..=level {
        let up = 1usize << (j - 1);
        wavelet = convolve(&upsample(filter.wavelet(), up), &scaling);
        scaling = convolve(&upsample(filter.scaling(), up), &scaling);
    }
    (wavelet, scaling)
}

/// Inserts `factor − 1` zeros between taps.
fn upsample(taps: &[f64], factor: usize) -> Vec<f64> {
    let mut out = vec![0.0; (taps.len() - 1) * factor + 1];
    for (i, &t) in taps.iter().enumerate() {
        out[i * factor] = t;
    }
    out
}

fn convolve(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}
