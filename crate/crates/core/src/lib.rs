//! Modulus support functionals for the closed convex hull of geometric
//! moment vectors in `c0`.
//!
//! The crate is organised around four numerical layers:
//!
//! * [`circlemeasure`]: Cantor sets and measures of constant ratio, their
//!   Fourier-Stieltjes coefficients (product formula and a direct
//!   integration oracle), and the Rajchman/Pisot classification of ratios.
//! * [`wiener`]: truncated `l1` coefficient series viewed as elements of
//!   the Wiener algebra, with evaluation, sup-norm brackets, pairing and
//!   the few compositions the pipeline needs.
//! * [`support`]: the `c0` side: moment vectors, finite atom measures on
//!   the disk, the arc discretization of circle measures, the sup over the
//!   convex hull and modulus-support verification.
//! * [`peaks`]: admissibility of (alpha, xi), metric sums, and numerical
//!   peak-function candidates built from the Herglotz transform of the
//!   distance weight `d_E^-alpha`.
//!
//! [`cli`] wires these into the `modsupport` command line tool.

// Negated comparisons are used on purpose so that NaN inputs fail validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod circlemeasure;
pub mod cli;
mod error;
pub mod fmt;
pub mod peaks;
pub mod quadrature;
pub mod support;
pub mod wiener;

#[cfg(test)]
mod frozen;
#[cfg(test)]
mod properties;

pub use error::{Error, Result};

pub use num_complex::Complex64;

pub use circlemeasure::{
    cantor_stage, coefficient_table, complementary_gaps, decay_profile, fs_coeff_oracle, fs_coeff_product, pisot_check,
    rajchman_classify, ClassificationVerdict, FourierCoefficientTable, IntervalSet, PisotVerdict, RatioParam, Verdict,
};

pub use peaks::{
    admissible_parameters, build_peak_candidate, herglotz_weight_moments, metric_sum, vanish_at_origin, weak_to_peak,
    HerglotzWeight, PeakCandidate, PeakParams,
};
pub use support::{
    discretize_measure, moment_vector, pairing_crosscheck, phi_lambda, sup_over_s0, verify_support_pair, DiskAtomSet,
    MomentVector, SupportReport,
};
pub use wiener::CoefficientSeries;
