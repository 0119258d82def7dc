//! Reductive-property scoring, experiment suites and comparison tables.

mod compare;
mod criterion;
mod experiment;
pub mod fixtures;
pub mod report;

pub use compare::{
    check_comparison, compare_methods, Comparison, ComparisonReference, ComparisonRow,
    FamilySummary, ReferenceRow, ReferenceSummary,
};
pub use criterion::{expected_target, premise_for, rpcf, CaseTilt};
pub use experiment::{
    check_report, format_vector, run_experiment, run_experiment_with, CaseResult, CaseSpec, Class, Expectation,
    ExperimentSpec, FixtureOutcome, MethodAverage, Quantity, RpcfReport,
};
