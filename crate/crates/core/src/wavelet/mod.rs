//! MODWT wavelet engine: base filter pairs and the pyramid transform.

mod filters;
mod modwt;

pub use filters::{
    equivalent_filter_width, equivalent_filters, filter_table, FilterKind, WaveletFilter,
};
pub use modwt::{imodwt, modwt, nonboundary_range, ScaleDecomposition, MAX_LEVELS};
