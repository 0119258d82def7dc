use std::collections::BTreeSet;
use std::fmt;
use std::fmt::Write;

use serde::Serialize;

use super::controller::{linspace, matching_degree, rule_output};
use crate::baselines::RelationKind;
use crate::error::{FuzzyError, Result};
use crate::lcm::{fmp_lcm_branch, Branch, SignForm};
use crate::method::InferenceMethod;
use crate::set::FuzzySetVector;

/// Points in the probe universe `[0, 1]`.
pub const PROBE_POINTS: usize = 11;
const GRADE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Convergence {
    Converging,
    NonConverging,
}

impl fmt::Display for Convergence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Convergence::Converging => "converging",
            Convergence::NonConverging => "non-converging",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProbeRow {
    pub backend: InferenceMethod,
    pub distinct_outputs: usize,
    /// Distinct premise-to-antecedent distances (LCM only).
    pub distinct_distances: Option<usize>,
    pub classification: Convergence,
    /// Inferred output for each swept input, in sweep order.
    pub outputs: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProbeReport {
    pub universe: Vec<f64>,
    pub antecedent: Vec<f64>,
    pub consequent: Vec<f64>,
    pub rows: Vec<ProbeRow>,
}

impl ProbeReport {
    pub fn row(&self, backend: InferenceMethod) -> Option<&ProbeRow> {
        self.rows.iter().find(|r| r.backend == backend)
    }

    /// Columns `backend,distinct-output-count,classification`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("backend,distinct-output-count,classification\n");
        for r in &self.rows {
            let _ = writeln!(out, "{},{},{}", r.backend, r.distinct_outputs, r.classification);
        }
        out
    }
}

/// Every relation plus the three-valued LCM backend.
pub fn probe_backends() -> Vec<InferenceMethod> {
    RelationKind::ALL
        .iter()
        .map(|&k| InferenceMethod::Relation(k))
        .chain([InferenceMethod::Lcm(SignForm::ThreeValued)])
        .collect()
}

fn distinct(vectors: &[Vec<f64>]) -> usize {
    vectors
        .iter()
        .map(|v| v.iter().map(|x| (x * 1e12).round() as i64).collect::<Vec<_>>())
        .collect::<BTreeSet<_>>()
        .len()
}

/// Non-converging when no output grade ever leaves `{0, 1, μB(v), 1 − μB(v)}`,
/// i.e. the output never depends on how well the input matched.
fn classify(outputs: &[Vec<f64>], consequent: &[f64]) -> Convergence {
    let fixed = |g: f64, b: f64| {
        [0.0, 1.0, b, 1.0 - b]
            .iter()
            .any(|c| (g - c).abs() <= GRADE_TOL)
    };
    let frozen = outputs
        .iter()
        .all(|out| out.iter().zip(consequent).all(|(&g, &b)| fixed(g, b)));
    if frozen {
        Convergence::NonConverging
    } else {
        Convergence::Converging
    }
}

/// Sweeps singleton inputs across a single rule "large → large" on
/// `[0, 0.1, …, 1]` and classifies each backend by how its output
/// responds to the matching degree.
pub fn convergence_probe(backends: &[InferenceMethod]) -> Result<ProbeReport> {
    let universe = linspace(0.0, 1.0, PROBE_POINTS);
    let large = FuzzySetVector::new(universe.clone())?;
    let inputs: Vec<FuzzySetVector> = (0..PROBE_POINTS)
        .map(|i| {
            let mut g = vec![0.0; PROBE_POINTS];
            g[i] = 1.0;
            FuzzySetVector::new(g)
        })
        .collect::<Result<_>>()?;

    let mut rows = Vec::with_capacity(backends.len());
    for &backend in backends {
        let mut outputs = Vec::with_capacity(inputs.len());
        let mut distances = None;
        match backend {
            InferenceMethod::Relation(kind) => {
                for input in &inputs {
                    let h = matching_degree(input, &large)?;
                    outputs.push(rule_output(kind, h, &large));
                }
            }
            InferenceMethod::Lcm(form) => {
                let mut ds = BTreeSet::new();
                for input in &inputs {
                    let r = fmp_lcm_branch(&large, input, &large, Branch::Direct, None, form)?;
                    ds.insert(r.distance.to_bits());
                    outputs.push(r.result.into_grades());
                }
                distances = Some(ds.len());
            }
            other => {
                return Err(FuzzyError::InvalidParameter(format!(
                    "backend {other} has no control probe; use lcm:* or rel:*"
                )))
            }
        }
        rows.push(ProbeRow {
            backend,
            distinct_outputs: distinct(&outputs),
            distinct_distances: distances,
            classification: classify(&outputs, large.grades()),
            outputs,
        });
    }
    Ok(ProbeReport {
        antecedent: large.grades().to_vec(),
        consequent: large.grades().to_vec(),
        universe,
        rows,
    })
}
