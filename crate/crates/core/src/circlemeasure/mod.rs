//! Cantor sets and measures of constant ratio on the circle.
//!
//! A ratio `0 < xi < 1/2` determines the stages `E_n(xi)`, each a union of
//! `2^n` closed intervals of length `xi^n` inside `[0, 1]`, and the Cantor
//! measure `sigma(xi)`, the weak-* limit of the normalized Lebesgue measure
//! on the stages. The interval `[0, 1]` is carried to the circle by
//! `t -> exp(2 pi i t)`.

mod classify;
mod coeffs;
mod pisot;
mod ratio;
mod stages;

pub use classify::{rajchman_classify, rajchman_classify_with_tol, ClassificationVerdict, Evidence, Verdict};
pub(crate) use coeffs::oracle_from_lefts;
pub use coeffs::{
    coefficient_table, decay_profile, fs_coeff_oracle, fs_coeff_oracle_bound, fs_coeff_product, oracle_stage_for_bound,
    CoefficientMethod, DecayBlock, FourierCoefficientTable, ProductValue, TableMethod, DEFAULT_PRODUCT_TOL,
};
pub use pisot::{pisot_check, polynomial_roots, PisotReport, PisotVerdict, DEFAULT_PISOT_TOL};
pub use ratio::{parse_polynomial, RatioParam};
pub(crate) use stages::StageLefts;
pub use stages::{
    cantor_stage, cantor_stage_bounded, complementary_gaps, GapGeneration, GapSummary, IntervalSet,
    DEFAULT_MAX_GENERATION,
};
