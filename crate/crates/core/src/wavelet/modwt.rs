//! Maximal overlap discrete wavelet transform via the pyramid algorithm.
//!
//! The transform is undecimated: every level keeps all `N` coefficients, so
//! detail and scaling vectors stay aligned with the input. Boundaries are
//! circular — the series is treated as periodic — which preserves the energy
//! identity  sum(x²) = Σ_j sum(D̃_j²) + sum(S̃_J²)  exactly and keeps the
//! transform shift-covariant.
//!
//! Level `j` applies the base filters to the level `j−1` scaling
//! coefficients at a tap spacing of `2^{j−1}`, which is equivalent to
//! convolving the input with the explicit level-`j` filters of width
//! `L_j = (2^j − 1)(L − 1) + 1`.

use std::ops::Range;

use crate::error::{Error, Result};
use crate::wavelet::filters::{equivalent_filter_width, WaveletFilter};

/// A `J`-level decomposition: per-level detail vectors plus the level-`J`
/// scaling (smooth) vector, all of input length.
#[derive(Debug, Clone, PartialEq)]
pub struct ScaleDecomposition {
    filter: WaveletFilter,
    details: Vec<Vec<f64>>,
    smooth: Vec<f64>,
}

impl ScaleDecomposition {
    /// Assembles a decomposition from raw parts, rejecting level/length
    /// mismatches.
    pub fn from_parts(
        filter: WaveletFilter,
        details: Vec<Vec<f64>>,
        smooth: Vec<f64>,
    ) -> Result<Self> {
        if details.is_empty() {
            return Err(Error::MalformedDecomposition {
                message: "no detail levels".to_string(),
            });
        }
        if smooth.len() < 2 {
            return Err(Error::MalformedDecomposition {
                message: "fewer than two observations".to_string(),
            });
        }
        if let Some(level) = details.iter().position(|d| d.len() != smooth.len()) {
            return Err(Error::MalformedDecomposition {
                message: format!(
                    "level {} has {} coefficients, expected {}",
                    level + 1,
                    details[level].len(),
                    smooth.len()
                ),
            });
        }
        Ok(Self {
            filter,
            details,
            smooth,
        })
    }

    /// Number of observations `N`.
    pub fn len(&self) -> usize {
        self.smooth.len()
    }

    pub fn is_empty(&self) -> bool {
        self.smooth.is_empty()
    }

    /// Number of decomposition levels `J`.
    pub fn levels(&self) -> usize {
        self.details.len()
    }

    pub fn filter(&self) -> &WaveletFilter {
        &self.filter
    }

    /// Detail coefficients D̃_j for `level` in `1..=J`.
    pub fn detail(&self, level: usize) -> &[f64] {
        &self.details[level - 1]
    }

    /// Level-`J` scaling coefficients S̃_J.
    pub fn smooth(&self) -> &[f64] {
        &self.smooth
    }

    /// Equivalent filter width L_j at `level`.
    pub fn boundary_width(&self, level: usize) -> usize {
        equivalent_filter_width(self.filter.width(), level)
    }

    /// Per-level detail energies plus the smooth energy.
    pub fn energy_by_level(&self) -> (Vec<f64>, f64) {
        let details = self
            .details
            .iter()
            .map(|d| d.iter().map(|x| x * x).sum())
            .collect();
        let smooth = self.smooth.iter().map(|x| x * x).sum();
        (details, smooth)
    }
}

/// Levels beyond this would overflow the equivalent-filter width formula;
/// no real series needs them.
pub const MAX_LEVELS: usize = 30;

/// Decomposes `x` to `levels` levels with circular boundary conditions.
pub fn modwt(x: &[f64], filter: &WaveletFilter, levels: usize) -> Result<ScaleDecomposition> {
    if levels == 0 {
        return Err(Error::ZeroParameter { what: "levels" });
    }
    if levels > MAX_LEVELS {
        return Err(Error::TooManyLevels {
            levels,
            max: MAX_LEVELS,
        });
    }
    if x.len() < 2 {
        return Err(Error::TooShort {
            len: x.len(),
            min: 2,
        });
    }
    if let Some(index) = x.iter().position(|v| !v.is_finite()) {
        return Err(Error::NonFinite { index });
    }
    let n = x.len();
    let wavelet = filter.wavelet();
    let scaling = filter.scaling();
    let width = filter.width();

    let mut details = Vec::with_capacity(levels);
    let mut current = x.to_vec();
    // tap spacing 2^{j-1}, reduced mod n so indices never overflow
    let mut spacing = 1 % n;
    for _ in 0..levels {
        let mut detail = vec![0.0; n];
        let mut smooth = vec![0.0; n];
        for t in 0..n {
            let mut idx = t;
            let mut d = wavelet[0] * current[idx];
            let mut s = scaling[0] * current[idx];
            for l in 1..width {
                idx = if idx >= spacing {
                    idx - spacing
                } else {
                    idx + n - spacing
                };
                d += wavelet[l] * current[idx];
                s += scaling[l] * current[idx];
            }
            detail[t] = d;
            smooth[t] = s;
        }
        details.push(detail);
        current = smooth;
        spacing = (spacing * 2) % n;
    }
    Ok(ScaleDecomposition {
        filter: filter.clone(),
        details,
        smooth: current,
    })
}

/// Inverts a decomposition, reconstructing the original series.
pub fn imodwt(decomposition: &ScaleDecomposition) -> Vec<f64> {
    let n = decomposition.len();
    let wavelet = decomposition.filter.wavelet();
    let scaling = decomposition.filter.scaling();
    let width = decomposition.filter.width();

    let mut current = decomposition.smooth.clone();
    for level in (1..=decomposition.levels()).rev() {
        let spacing = pow2_mod(level - 1, n);
        let detail = decomposition.detail(level);
        let mut previous = vec![0.0; n];
        for (t, out) in previous.iter_mut().enumerate() {
            let mut idx = t;
            let mut sum = wavelet[0] * detail[idx] + scaling[0] * current[idx];
            for l in 1..width {
                idx += spacing;
                if idx >= n {
                    idx -= n;
                }
                sum += wavelet[l] * detail[idx] + scaling[l] * current[idx];
            }
            *out = sum;
        }
        current = previous;
    }
    current
}

fn pow2_mod(exponent: usize, n: usize) -> usize {
    let mut s = 1 % n;
    for _ in 0..exponent {
        s = (s * 2) % n;
    }
    s
}

/// Index range of non-boundary coefficients, `t = L_j − 1 … N − 1`; the
/// count is `M_j = N − L_j + 1`.
pub fn nonboundary_range(n: usize, width: usize) -> Result<Range<usize>> {
    if width > n {
        return Err(Error::ScaleTooWide { width, len: n });
    }
    Ok(width - 1..n)
}
