//! Distance-based approximate reasoning over vectors of unequal length.
//!
//! Antecedent, premise and consequent are resampled onto a common grid of
//! `lcm(u, v)` points. The root-mean-square premise/antecedent distance is
//! added, signed per grid point, to the consequent. The result is read back
//! at the consequent's anchors and min–max normalized.

mod extend;
mod pipeline;

pub use extend::{gcd, lcm, lcm_extend, select_anchors, ExtendedVector, MAX_THETA};
pub use pipeline::{
    fmp_lcm, fmp_lcm_batch, fmp_lcm_branch, fmp_lcm_tilted, fmt_lcm, fmt_lcm_branch,
    fmt_lcm_tilted, lcm_distance, normalize, sign_vector, Branch, CaseTag, Direction,
    LcmInferenceResult, SignForm, DEGENERATE_SPREAD,
};
