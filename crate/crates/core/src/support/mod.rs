//! The `c0` side: geometric moment vectors `phi_lambda = (lambda^j)`, finite
//! atom measures on the disk and their moments, the arc discretization of
//! circle measures, the supremum of `|<a, x>|` over `S0`, and checks that a
//! functional attains its modulus supremum at a moment vector.

mod atoms;
mod discretize;
mod duality;
mod verify;

pub use atoms::{moment_vector, phi_lambda, DiskAtomSet, MeasureSpec, MomentVector};
pub use discretize::{discretize_measure, CircleMeasure, DiscretizationGrid};
pub use duality::{radial_ladder, sup_over_s0, SearchConfig, SupOverS0};
pub use verify::{
    pairing_crosscheck, verify_support_pair, Crosscheck, SupportDiagnostics, SupportReport, SupportVerdict,
    VerifyConfig,
};
