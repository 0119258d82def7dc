//! Fuzzy approximate reasoning over discrete fuzzy vectors.

// `!(x > 0.0)` style checks are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod baselines;
pub mod control;
pub mod error;
pub mod lcm;
pub mod logic;
pub mod measure;
pub mod method;
pub mod request;
pub mod rpcf;
pub mod set;

pub use error::{FuzzyError, Result};
pub use method::InferenceMethod;
pub use set::{FuzzySetVector, Hedge};
