//! Table builders behind the CLI commands.

use crate::error::{Error, Result};
use crate::hedge::{
    run_rolling_study, run_subsampled_study, HedgeConfig, ScaleAverages, SubsampleStudy,
};
use crate::metric::NaReason;
use crate::moments::{jarque_bera, sample_stats, scale_moments};
use crate::timeseries::{ensure_aligned, PriceSeries};
use crate::wavelet::{equivalent_filter_width, filter_table, imodwt, modwt, FilterKind};

use super::{Cell, Provenance, ReportTable};

/// Tables produced by one command, plus whether the run was numerically
/// degenerate (nothing could be estimated anywhere).
#[derive(Debug, Clone)]
pub struct CommandOutput {
    pub tables: Vec<ReportTable>,
    pub degenerate: bool,
}

fn na_row_reason(error: Error) -> Result<NaReason> {
    match error {
        Error::ScaleTooWide { .. } => Ok(NaReason::ScaleTooWide),
        Error::ZeroVariance { .. } => Ok(NaReason::ZeroVariance),
        Error::TooFewObservations { .. } => Ok(NaReason::TooFewObservations),
        other => Err(other),
    }
}

/// Full-sample descriptive statistics per series and scale.
///
/// Scale 0 is the raw return series with classical mean-subtracted moments;
/// wavelet scales use zero-mean moments over non-boundary coefficients, so
/// their mean is reported as exactly 0. Scales wider than the sample are
/// marked NA rather than dropped.
pub fn cmd_stats(
    spot: &PriceSeries,
    futures: &PriceSeries,
    config: &HedgeConfig,
    provenance: Provenance,
) -> Result<CommandOutput> {
    ensure_aligned(spot, futures)?;
    let filter = filter_table(config.filter);
    let mut table = ReportTable::new(
        "stats",
        vec![
            "series",
            "scale",
            "observations",
            "mean",
            "stdev",
            "skewness",
            "kurtosis",
            "jarque_bera",
        ],
        provenance,
    );

    for (label, prices) in [("spot", spot), ("futures", futures)] {
        let returns = prices.log_returns();
        let values = returns.values();

        match sample_stats(values) {
            Ok(stats) => table.push(vec![
                label.into(),
                0usize.into(),
                values.len().into(),
                stats.mean.into(),
                stats.stdev.into(),
                stats.skewness.into(),
                stats.kurtosis.into(),
                stats.jarque_bera.into(),
            ]),
            Err(e) => {
                let reason = na_row_reason(e)?;
                table.push(vec![
                    label.into(),
                    0usize.into(),
                    values.len().into(),
                    Cell::Na(reason),
                    Cell::Na(reason),
                    Cell::Na(reason),
                    Cell::Na(reason),
                    Cell::Na(reason),
                ]);
            }
        }

        let decomposition = modwt(values, &filter, config.levels)?;
        for level in 1..=config.levels {
            let width = equivalent_filter_width(filter.width(), level);
            match scale_moments(decomposition.detail(level), width, level) {
                Ok(moments) => table.push(vec![
                    label.into(),
                    level.into(),
                    moments.count.into(),
                    // zero-mean estimators: the scale mean is 0 by construction
                    0usize.into(),
                    moments.variance.sqrt().into(),
                    moments.skewness.into(),
                    moments.kurtosis.into(),
                    jarque_bera(moments.count, moments.skewness, moments.kurtosis).into(),
                ]),
                Err(e) => {
                    let reason = na_row_reason(e)?;
                    table.push(vec![
                        label.into(),
                        level.into(),
                        Cell::Na(reason),
                        Cell::Na(reason),
                        Cell::Na(reason),
                        Cell::Na(reason),
                        Cell::Na(reason),
                        Cell::Na(reason),
                    ]);
                }
            }
        }
    }

    Ok(CommandOutput {
        tables: vec![table],
        degenerate: false,
    })
}

fn summary_columns() -> Vec<&'static str> {
    vec![
        "sample",
        "scale",
        "windows",
        "hedge_ratio",
        "he_variance",
        "he_var",
        "he_semivariance",
        "stdev_unhedged",
        "stdev_hedged",
        "skewness_unhedged",
        "skewness_hedged",
        "kurtosis_unhedged",
        "kurtosis_hedged",
    ]
}

fn push_summary_rows(table: &mut ReportTable, averages: &[ScaleAverages], sample: &str) {
    for avg in averages {
        let side = match sample {
            "in" => Some(&avg.in_sample),
            _ => avg.out_of_sample.as_ref(),
        };
        let Some(side) = side else { continue };
        table.push(vec![
            sample.into(),
            avg.scale.into(),
            avg.windows.into(),
            avg.hedge_ratio.into(),
            side.he_variance.into(),
            side.he_var.into(),
            side.he_semivariance.into(),
            side.stdev_unhedged.into(),
            side.stdev_hedged.into(),
            side.skewness_unhedged.into(),
            side.skewness_hedged.into(),
            side.kurtosis_unhedged.into(),
            side.kurtosis_hedged.into(),
        ]);
    }
}

/// Rolling multiscale hedge study.
///
/// Emits the per-window series (one row per window and scale), two averaged
/// tables — strict (windows where in- and out-of-sample are both available)
/// and in-sample-only over every feasible window — and the static
/// full-series hedge ratios.
pub fn cmd_hedge(
    spot: &PriceSeries,
    futures: &PriceSeries,
    config: &HedgeConfig,
    provenance: Provenance,
) -> Result<CommandOutput> {
    ensure_aligned(spot, futures)?;
    let spot_returns = spot.log_returns();
    let futures_returns = futures.log_returns();
    let study = run_rolling_study(spot_returns.values(), futures_returns.values(), config)?;

    let mut windows = ReportTable::new(
        "hedge_windows",
        vec![
            "window_start",
            "end_date",
            "scale",
            "hedge_ratio",
            "he_variance_in",
            "he_variance_out",
            "he_var_in",
            "he_var_out",
        ],
        provenance.clone(),
    );
    for result in &study.results {
        let end_date = spot_returns.dates()[result.window_start + config.window - 1];
        for outcome in &result.scales {
            match outcome {
                crate::hedge::ScaleOutcome::Usable(hedge) => {
                    let (he_out, var_out) = match hedge.out_of_sample.metrics() {
                        Some(oos) => (Cell::Float(oos.he_variance), Cell::from(oos.he_var)),
                        None => {
                            let reason = hedge
                                .out_of_sample
                                .na_reason()
                                .unwrap_or(NaReason::OutOfSampleUnavailable);
                            (Cell::Na(reason), Cell::Na(reason))
                        }
                    };
                    windows.push(vec![
                        result.window_start.into(),
                        end_date.into(),
                        hedge.scale.into(),
                        hedge.hedge_ratio.into(),
                        hedge.in_sample.he_variance.into(),
                        he_out,
                        hedge.in_sample.he_var.into(),
                        var_out,
                    ]);
                }
                crate::hedge::ScaleOutcome::Unusable { scale, reason } => {
                    windows.push(vec![
                        result.window_start.into(),
                        end_date.into(),
                        (*scale).into(),
                        Cell::Na(*reason),
                        Cell::Na(*reason),
                        Cell::Na(*reason),
                        Cell::Na(*reason),
                        Cell::Na(*reason),
                    ]);
                }
            }
        }
    }

    let mut strict = ReportTable::new(
        "hedge_summary_strict",
        summary_columns(),
        provenance.clone(),
    );
    push_summary_rows(&mut strict, &study.averages_strict, "in");
    push_summary_rows(&mut strict, &study.averages_strict, "out");

    let mut insample = ReportTable::new(
        "hedge_summary_insample",
        summary_columns(),
        provenance.clone(),
    );
    push_summary_rows(&mut insample, &study.averages_insample, "in");

    let mut static_table = ReportTable::new(
        "hedge_static",
        vec!["scale", "hedge_ratio"],
        provenance,
    );
    for (scale, ratio) in study.static_ratios.iter().enumerate() {
        static_table.push(vec![scale.into(), (*ratio).into()]);
    }

    let degenerate = study
        .results
        .iter()
        .chain(study.insample_tail.iter())
        .all(|r| r.scales.iter().all(|s| s.usable().is_none()));

    Ok(CommandOutput {
        tables: vec![windows, strict, insample, static_table],
        degenerate,
    })
}

/// Subsampled-horizon baseline: averaged table plus the per-window
/// effectiveness series.
pub fn cmd_subsample(
    spot: &PriceSeries,
    futures: &PriceSeries,
    horizons: &[usize],
    window_days: usize,
    provenance: Provenance,
) -> Result<CommandOutput> {
    let SubsampleStudy { rows, per_window } =
        run_subsampled_study(spot, futures, horizons, window_days)?;

    let mut summary = ReportTable::new(
        "subsample_summary",
        vec![
            "horizon",
            "points_per_window",
            "windows",
            "hedge_ratio",
            "he_variance",
            "stdev_unhedged",
            "stdev_hedged",
            "skewness_unhedged",
            "skewness_hedged",
            "kurtosis_unhedged",
            "kurtosis_hedged",
        ],
        provenance.clone(),
    );
    for row in &rows {
        summary.push(vec![
            row.horizon.into(),
            row.points_per_window.into(),
            row.windows.into(),
            row.hedge_ratio.into(),
            row.he_variance.into(),
            row.stdev_unhedged.into(),
            row.stdev_hedged.into(),
            row.skewness_unhedged.into(),
            row.skewness_hedged.into(),
            row.kurtosis_unhedged.into(),
            row.kurtosis_hedged.into(),
        ]);
    }

    let mut windows = ReportTable::new(
        "subsample_windows",
        vec![
            "horizon",
            "window_start",
            "end_date",
            "hedge_ratio",
            "he_variance",
        ],
        provenance,
    );
    for row in &per_window {
        windows.push(vec![
            row.horizon.into(),
            row.window_start.into(),
            row.end_date.into(),
            row.hedge_ratio.into(),
            row.he_variance.into(),
        ]);
    }

    let degenerate = rows.iter().all(|r| r.windows == 0);
    Ok(CommandOutput {
        tables: vec![summary, windows],
        degenerate,
    })
}

/// Coefficient dump of one series' return decomposition plus an energy
/// budget; optionally verifies the inverse-transform round trip.
pub fn cmd_decompose(
    prices: &PriceSeries,
    filter: FilterKind,
    levels: usize,
    check_roundtrip: bool,
    provenance: Provenance,
) -> Result<CommandOutput> {
    let returns = prices.log_returns();
    let values = returns.values();
    let filter = filter_table(filter);
    let decomposition = modwt(values, &filter, levels)?;

    let mut coefficients = ReportTable::new(
        "decompose_coefficients",
        vec!["t", "level", "detail", "smooth_at_J"],
        provenance.clone(),
    );
    for t in 0..values.len() {
        for level in 1..=levels {
            coefficients.push(vec![
                t.into(),
                level.into(),
                decomposition.detail(level)[t].into(),
                decomposition.smooth()[t].into(),
            ]);
        }
    }

    let mut energy = ReportTable::new(
        "decompose_energy",
        vec!["component", "sum_of_squares"],
        provenance,
    );
    let input_energy: f64 = values.iter().map(|v| v * v).sum();
    let (detail_energy, smooth_energy) = decomposition.energy_by_level();
    energy.push(vec!["input".into(), input_energy.into()]);
    for (level, e) in detail_energy.iter().enumerate() {
        energy.push(vec![
            Cell::Text(format!("detail_{}", level + 1)),
            (*e).into(),
        ]);
    }
    energy.push(vec!["smooth".into(), smooth_energy.into()]);
    let total = detail_energy.iter().sum::<f64>() + smooth_energy;
    energy.push(vec!["decomposition_total".into(), total.into()]);
    let relative_error = if input_energy == 0.0 {
        (total - input_energy).abs()
    } else {
        (total - input_energy).abs() / input_energy
    };
    energy.push(vec!["energy_relative_error".into(), relative_error.into()]);

    if check_roundtrip {
        let reconstructed = imodwt(&decomposition);
        let max_error = values
            .iter()
            .zip(&reconstructed)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0f64, f64::max);
        energy.push(vec!["roundtrip_max_abs_error".into(), max_error.into()]);
    }

    Ok(CommandOutput {
        tables: vec![coefficients, energy],
        degenerate: false,
    })
}
