use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::criterion::{expected_target, premise_for, rpcf, CaseTilt};
use crate::error::{FuzzyError, Result};
use crate::lcm::{Branch, CaseTag, Direction};
use crate::method::{CaseContext, InferenceMethod};
use crate::set::FuzzySetVector;

/// Which four cases make up a suite.
///
/// Class 1 ends with the negated premise (case 4 / case 9), class 2 with
/// the tilted one (case 5 / case 10).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Class {
    Class1,
    Class2,
}

impl Class {
    pub fn cases(self, direction: Direction) -> [CaseTag; 4] {
        use CaseTag::*;
        match (self, direction) {
            (Class::Class1, Direction::Fmp) => [Case1, Case2, Case3, Case4],
            (Class::Class2, Direction::Fmp) => [Case1, Case2, Case3, Case5],
            (Class::Class1, Direction::Fmt) => [Case6, Case7, Case8, Case9],
            (Class::Class2, Direction::Fmt) => [Case6, Case7, Case8, Case10],
        }
    }
}

impl fmt::Display for Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Class::Class1 => "class1",
            Class::Class2 => "class2",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CaseSpec {
    pub case: CaseTag,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tilt: Option<CaseTilt>,
    /// Overrides the case's default LCM branch.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub branch: Option<Branch>,
}

impl CaseSpec {
    pub fn plain(case: CaseTag) -> Self {
        Self {
            case,
            tilt: None,
            branch: None,
        }
    }
}

/// A stored value a report is checked against.
///
/// Exactly one of `rpcf`, `average`, `vector` is set; `rpcf` and `vector`
/// need a `case`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expectation {
    pub method: InferenceMethod,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub case: Option<CaseTag>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rpcf: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub average: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vector: Option<Vec<f64>>,
    pub tolerance: f64,
    /// Soft expectations are reported but never fail a check.
    #[serde(default)]
    pub soft: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentSpec {
    pub name: String,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub description: String,
    pub direction: Direction,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub class: Option<Class>,
    pub antecedent: FuzzySetVector,
    pub consequent: FuzzySetVector,
    pub cases: Vec<CaseSpec>,
    #[serde(default = "default_methods")]
    pub methods: Vec<InferenceMethod>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub expect: Vec<Expectation>,
}

fn default_methods() -> Vec<InferenceMethod> {
    InferenceMethod::comparison_set()
}

impl ExperimentSpec {
    pub fn validate(&self) -> Result<()> {
        for c in &self.cases {
            c.case.check_direction(self.direction)?;
            if c.case.is_tilted() && c.tilt.is_none() {
                return Err(FuzzyError::TiltMissing);
            }
        }
        if let Some(class) = self.class {
            let want: BTreeSet<_> = class.cases(self.direction).into_iter().collect();
            let got: BTreeSet<_> = self.cases.iter().map(|c| c.case).collect();
            if want != got || got.len() != self.cases.len() {
                return Err(FuzzyError::InvalidParameter(format!(
                    "spec `{}`: {class} {} needs exactly cases {:?}",
                    self.name,
                    self.direction,
                    class.cases(self.direction).map(|c| c.to_string())
                )));
            }
        }
        for e in &self.expect {
            let kinds = [e.rpcf.is_some(), e.average.is_some(), e.vector.is_some()];
            let ok = kinds.iter().filter(|&&k| k).count() == 1
                && (e.average.is_some() == e.case.is_none());
            if !ok || !(e.tolerance >= 0.0) {
                return Err(FuzzyError::InvalidParameter(format!(
                    "spec `{}`: malformed expectation for {}",
                    self.name, e.method
                )));
            }
        }
        Ok(())
    }

    /// Builds a plain spec: `class`'s four cases, no tilts or overrides.
    pub fn for_class(
        name: &str,
        direction: Direction,
        class: Class,
        antecedent: FuzzySetVector,
        consequent: FuzzySetVector,
    ) -> Self {
        Self {
            name: name.to_string(),
            description: String::new(),
            direction,
            class: Some(class),
            antecedent,
            consequent,
            cases: class.cases(direction).map(CaseSpec::plain).to_vec(),
            methods: default_methods(),
            expect: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CaseResult {
    pub case: CaseTag,
    pub method: InferenceMethod,
    pub premise: Vec<f64>,
    pub target: Vec<f64>,
    pub result: Vec<f64>,
    pub rpcf: f64,
    pub distance: Option<f64>,
    pub degenerate: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MethodAverage {
    pub method: InferenceMethod,
    pub average: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RpcfReport {
    pub spec: String,
    pub direction: Direction,
    pub class: Option<Class>,
    /// Ordered by case, then by method.
    pub rows: Vec<CaseResult>,
    /// One per method, in the spec's method order.
    pub averages: Vec<MethodAverage>,
}

impl RpcfReport {
    pub fn row(&self, method: InferenceMethod, case: CaseTag) -> Option<&CaseResult> {
        self.rows
            .iter()
            .find(|r| r.method == method && r.case == case)
    }

    pub fn average(&self, method: InferenceMethod) -> Option<f64> {
        self.averages
            .iter()
            .find(|a| a.method == method)
            .map(|a| a.average)
    }
}

pub fn run_experiment(spec: &ExperimentSpec) -> Result<RpcfReport> {
    run_experiment_with(spec, &spec.methods)
}

/// Runs `spec` with `methods` instead of the spec's own list.
pub fn run_experiment_with(spec: &ExperimentSpec, methods: &[InferenceMethod]) -> Result<RpcfReport> {
    spec.validate()?;
    let (a, b) = (&spec.antecedent, &spec.consequent);
    let mut rows = Vec::with_capacity(spec.cases.len() * methods.len());
    for c in &spec.cases {
        let premise = premise_for(c.case, a, b, c.tilt.as_ref())?;
        let target = expected_target(c.case, a, b, c.tilt.as_ref())?;
        let ctx = CaseContext::new(c.case)
            .with_tilt(c.tilt.as_ref().map(|t| &t.target))
            .with_branch(c.branch);
        for &method in methods {
            let out = method.infer(spec.direction, a, b, &premise, ctx)?;
            rows.push(CaseResult {
                case: c.case,
                method,
                premise: premise.grades().to_vec(),
                target: target.grades().to_vec(),
                rpcf: rpcf(&out.result, &target)?,
                result: out.result.into_grades(),
                distance: out.distance,
                degenerate: out.degenerate,
            });
        }
    }
    let averages = methods
        .iter()
        .map(|&method| {
            let scores: Vec<f64> = rows
                .iter()
                .filter(|r| r.method == method)
                .map(|r| r.rpcf)
                .collect();
            let average = if scores.is_empty() {
                0.0
            } else {
                scores.iter().sum::<f64>() / scores.len() as f64
            };
            MethodAverage { method, average }
        })
        .collect();
    Ok(RpcfReport {
        spec: spec.name.clone(),
        direction: spec.direction,
        class: spec.class,
        rows,
        averages,
    })
}

/// What an expectation compared.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Quantity {
    Rpcf,
    Average,
    Vector,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FixtureOutcome {
    pub spec: String,
    pub label: String,
    pub quantity: Quantity,
    pub expected: String,
    pub actual: String,
    /// Absolute deviation; for vectors the largest elementwise one.
    pub deviation: f64,
    pub tolerance: f64,
    pub soft: bool,
}

impl FixtureOutcome {
    pub fn within_tolerance(&self) -> bool {
        // allow for the binary representation of decimal fixtures
        self.deviation <= self.tolerance + 1e-9
    }

    /// A soft outcome never fails.
    pub fn passed(&self) -> bool {
        self.soft || self.within_tolerance()
    }
}

/// `[a, b, …]` with four decimals.
pub fn format_vector(v: &[f64]) -> String {
    let parts: Vec<String> = v.iter().map(|x| format!("{x:.4}")).collect();
    format!("[{}]", parts.join(", "))
}

/// Compares `report` with every expectation stored in `spec`.
pub fn check_report(spec: &ExperimentSpec, report: &RpcfReport) -> Result<Vec<FixtureOutcome>> {
    spec.expect
        .iter()
        .map(|e| {
            let missing = || {
                FuzzyError::InvalidParameter(format!(
                    "spec `{}`: no result for {} {}",
                    spec.name,
                    e.method,
                    e.case.map(|c| c.to_string()).unwrap_or_default()
                ))
            };
            let base = |quantity, label: String, expected, actual, deviation| FixtureOutcome {
                spec: spec.name.clone(),
                label,
                quantity,
                expected,
                actual,
                deviation,
                tolerance: e.tolerance,
                soft: e.soft,
            };
            if let Some(want) = e.average {
                let got = report.average(e.method).ok_or_else(missing)?;
                return Ok(base(
                    Quantity::Average,
                    format!("{} average", e.method),
                    format!("{want:.2}"),
                    format!("{got:.2}"),
                    (got - want).abs(),
                ));
            }
            let case = e.case.ok_or_else(missing)?;
            let row = report.row(e.method, case).ok_or_else(missing)?;
            if let Some(want) = e.rpcf {
                return Ok(base(
                    Quantity::Rpcf,
                    format!("{} {case} rpcf", e.method),
                    format!("{want:.2}"),
                    format!("{:.2}", row.rpcf),
                    (row.rpcf - want).abs(),
                ));
            }
            let want = e.vector.as_ref().ok_or_else(missing)?;
            let deviation = if want.len() == row.result.len() {
                want.iter()
                    .zip(&row.result)
                    .map(|(w, g)| (w - g).abs())
                    .fold(0.0, f64::max)
            } else {
                f64::INFINITY
            };
            Ok(base(
                Quantity::Vector,
                format!("{} {case} result", e.method),
                format_vector(want),
                format_vector(&row.result),
                deviation,
            ))
        })
        .collect()
}
