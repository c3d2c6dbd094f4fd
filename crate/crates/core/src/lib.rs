//! Exact computation of the equivariant Â-genus localization series for circle
//! actions with isolated fixed points.
//!
//! - [`series`]: truncated power series over big integers in `s = t^{1/2}`.
//! - [`fixedpoints`]: fixed-point weight data, linear actions on `CP^n`, and
//!   the JSON document format.
//! - [`index`]: the localization series, the weight-sum spin obstruction, and
//!   cross-checks against the parity rule for `CP^n`.
//! - [`cli`]: the `ahat` command-line front end.

pub mod cli;
mod error;
pub mod fixedpoints;
pub mod index;
pub mod series;

pub use error::{Error, Result};
pub use fixedpoints::{
    cp_standard_action, cp_weight_sum_formula, fixed_point_data, parse_fixed_point_data,
    serialize_fixed_point_data, FixedPoint, FixedPointData, LinearAction, Sign,
};
pub use index::{
    ahat_equivariant_series, cross_validate, is_cpn_spin, spin_obstruction_check, verify_vanishing,
    CrossValidation, ObstructionReport, VanishingReport, Verdict,
};
pub use series::TruncatedSeries;
