//! Peak sets and numerical peak-function candidates.
//!
//! A Cantor set `E(xi)` is a peak set for `W+` once `d_E^-alpha` is
//! integrable for some `1/2 < alpha < 1`. The candidate here is
//! `G = F / (1 + F)` with `F` the Herglotz transform of that weight,
//! truncated and Abel-damped.

mod candidate;
mod metric;
mod weight;

pub use candidate::{
    build_peak_candidate, vanish_at_origin, weak_to_peak, PeakCandidate, PeakDiagnostics, PeakParams, WeightSummary,
    DEFAULT_DAMPING,
};
pub use metric::{admissible_parameters, metric_sum, Admissibility, MetricSumMode};
pub use weight::{herglotz_weight_moments, HerglotzWeight};
