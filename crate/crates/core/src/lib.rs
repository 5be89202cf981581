//! Wavelet multiscale minimum-variance hedging.
//!
//! The pipeline decomposes spot and futures log returns into wavelet
//! time-scales with the maximal overlap discrete wavelet transform, estimates
//! a minimum-variance hedge ratio per scale in rolling windows, and scores
//! hedging effectiveness in- and out-of-sample by variance reduction and
//! Value-at-Risk reduction.
//!
//! Modules follow the pipeline:
//!
//! - [`timeseries`]: dated prices, log returns, subsampling, rolling windows
//! - [`wavelet`]: filter pairs and the (inverse) MODWT
//! - [`moments`]: wavelet and classical moment estimators
//! - [`effectiveness`]: variance, VaR and semivariance reduction metrics
//! - [`hedge`]: per-window, rolling and subsampled hedge studies
//! - [`report`]: provenance-stamped output tables for the CLI
//! - [`synthetic`]: deterministic test/demo data generators

pub mod effectiveness;
pub mod error;
pub mod hedge;
pub mod metric;
pub mod moments;
pub mod report;
pub mod synthetic;
pub mod timeseries;
pub mod wavelet;

pub use error::{Error, Result};
pub use metric::{MetricValue, NaReason};
