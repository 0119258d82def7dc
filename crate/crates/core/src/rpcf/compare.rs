use serde::{Deserialize, Serialize};

use super::experiment::{run_experiment_with, Class, FixtureOutcome, Quantity, RpcfReport};
use super::ExperimentSpec;
use crate::error::Result;
use crate::lcm::Direction;
use crate::method::InferenceMethod;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonRow {
    pub method: InferenceMethod,
    pub class: Class,
    pub fmp: Option<f64>,
    pub fmt: Option<f64>,
    /// Mean of the forward and backward averages.
    pub combined: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FamilySummary {
    pub family: String,
    pub fmp: Option<f64>,
    pub fmt: Option<f64>,
    pub average: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Comparison {
    /// Class 1 rows first, each class in method order.
    pub rows: Vec<ComparisonRow>,
    pub summary: Vec<FamilySummary>,
    pub reports: Vec<RpcfReport>,
}

impl Comparison {
    pub fn row(&self, method: InferenceMethod, class: Class) -> Option<&ComparisonRow> {
        self.rows
            .iter()
            .find(|r| r.method == method && r.class == class)
    }

    pub fn family(&self, family: &str) -> Option<&FamilySummary> {
        self.summary.iter().find(|s| s.family == family)
    }
}

fn mean(values: impl IntoIterator<Item = f64>) -> Option<f64> {
    let v: Vec<f64> = values.into_iter().collect();
    (!v.is_empty()).then(|| v.iter().sum::<f64>() / v.len() as f64)
}

/// Runs every classed spec with `methods` and tabulates per-class and
/// per-family averages. Specs without a class are ignored.
pub fn compare_methods(specs: &[ExperimentSpec], methods: &[InferenceMethod]) -> Result<Comparison> {
    let reports = specs
        .iter()
        .filter(|s| s.class.is_some())
        .map(|s| run_experiment_with(s, methods))
        .collect::<Result<Vec<_>>>()?;
    let lookup = |method, class, direction| {
        let scores = reports
            .iter()
            .filter(|r| r.class == Some(class) && r.direction == direction)
            .filter_map(|r| r.average(method));
        mean(scores)
    };

    let mut rows = Vec::new();
    for class in [Class::Class1, Class::Class2] {
        for &method in methods {
            let fmp = lookup(method, class, Direction::Fmp);
            let fmt = lookup(method, class, Direction::Fmt);
            if fmp.is_none() && fmt.is_none() {
                continue;
            }
            rows.push(ComparisonRow {
                method,
                class,
                fmp,
                fmt,
                combined: mean(fmp.into_iter().chain(fmt)),
            });
        }
    }

    let mut families: Vec<&str> = Vec::new();
    for m in methods {
        if !families.contains(&m.family()) {
            families.push(m.family());
        }
    }
    let summary = families
        .into_iter()
        .map(|family| {
            let members = || rows.iter().filter(move |r| r.method.family() == family);
            let fmp = mean(members().filter_map(|r| r.fmp));
            let fmt = mean(members().filter_map(|r| r.fmt));
            FamilySummary {
                family: family.to_string(),
                fmp,
                fmt,
                average: fmp.zip(fmt).map(|(p, t)| (p + t) / 2.0),
            }
        })
        .collect();

    Ok(Comparison {
        rows,
        summary,
        reports,
    })
}

/// A printed per-method row with its tolerances.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReferenceRow {
    pub method: InferenceMethod,
    pub class: Class,
    pub fmp: f64,
    pub fmt: f64,
    pub fmp_tolerance: f64,
    pub fmt_tolerance: f64,
    #[serde(default)]
    pub soft: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReferenceSummary {
    pub family: String,
    pub fmp: f64,
    pub fmt: f64,
    pub average: f64,
    pub tolerance: f64,
    #[serde(default)]
    pub soft: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComparisonReference {
    pub rows: Vec<ReferenceRow>,
    pub summary: Vec<ReferenceSummary>,
}

/// Diffs a comparison against printed values; absent cells are skipped.
pub fn check_comparison(comparison: &Comparison, reference: &ComparisonReference) -> Vec<FixtureOutcome> {
    let outcome = |label: String, want: f64, got: f64, tolerance: f64, soft: bool| FixtureOutcome {
        spec: "comparison".to_string(),
        label,
        quantity: Quantity::Average,
        expected: format!("{want:.2}"),
        actual: format!("{got:.2}"),
        deviation: (got - want).abs(),
        tolerance,
        soft,
    };
    let mut out = Vec::new();
    for r in &reference.rows {
        let Some(row) = comparison.row(r.method, r.class) else {
            continue;
        };
        if let Some(got) = row.fmp {
            out.push(outcome(
                format!("{} {} fmp", r.method, r.class),
                r.fmp,
                got,
                r.fmp_tolerance,
                r.soft,
            ));
        }
        if let Some(got) = row.fmt {
            out.push(outcome(
                format!("{} {} fmt", r.method, r.class),
                r.fmt,
                got,
                r.fmt_tolerance,
                r.soft,
            ));
        }
    }
    for s in &reference.summary {
        let Some(fam) = comparison.family(&s.family) else {
            continue;
        };
        for (what, want, got) in [
            ("fmp", s.fmp, fam.fmp),
            ("fmt", s.fmt, fam.fmt),
            ("average", s.average, fam.average),
        ] {
            if let Some(got) = got {
                out.push(outcome(
                    format!("{} summary {what}", s.family),
                    want,
                    got,
                    s.tolerance,
                    s.soft,
                ));
            }
        }
    }
    out
}
