//! Closed-loop fuzzy control of a first-order plant with dead time, and
//! probes of how each inference backend responds to the matching degree.

mod controller;
mod plant;
mod probe;
mod simulate;

pub use controller::{
    anti_diagonal_rules, centroid, fuzzify, infer_from_sets, infer_increment, linspace,
    matching_degree, rule_output, triangular_partition, ControllerConfig, Fuzzification,
    Increment, DEFAULT_POINTS, DEFAULT_TERMS,
};
pub use plant::{plant_step, Plant, PlantParams};
pub use probe::{convergence_probe, probe_backends, Convergence, ProbeReport, ProbeRow, PROBE_POINTS};
pub use simulate::{run_closed_loop, ControlRecord, ControlTrace, DIVERGENCE_LIMIT};
