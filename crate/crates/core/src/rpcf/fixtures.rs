//! Bundled experiment suites and reference values.

use super::compare::ComparisonReference;
use super::experiment::ExperimentSpec;

const SPECS: [(&str, &str); 6] = [
    ("fmp-class1", include_str!("../../fixtures/fmp-class1.json")),
    ("fmp-class2", include_str!("../../fixtures/fmp-class2.json")),
    ("fmt-class1", include_str!("../../fixtures/fmt-class1.json")),
    ("fmt-class2", include_str!("../../fixtures/fmt-class2.json")),
    ("large-fmp", include_str!("../../fixtures/large-fmp.json")),
    ("large-fmt", include_str!("../../fixtures/large-fmt.json")),
];

const REFERENCE: &str = include_str!("../../fixtures/comparison-reference.json");

fn parse(name: &str, text: &str) -> ExperimentSpec {
    // bundled data is covered by tests; a parse failure is a build defect
    serde_json::from_str(text).unwrap_or_else(|e| panic!("bundled spec {name}: {e}"))
}

/// Every bundled suite, in a fixed order.
pub fn bundled_specs() -> Vec<ExperimentSpec> {
    SPECS.iter().map(|(n, t)| parse(n, t)).collect()
}

/// The four classed suites used for method comparison.
pub fn comparison_specs() -> Vec<ExperimentSpec> {
    bundled_specs()
        .into_iter()
        .filter(|s| s.class.is_some())
        .collect()
}

pub fn bundled_spec(name: &str) -> Option<ExperimentSpec> {
    SPECS
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(n, t)| parse(n, t))
}

pub fn comparison_reference() -> ComparisonReference {
    serde_json::from_str(REFERENCE).unwrap_or_else(|e| panic!("bundled reference: {e}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_data_parses_and_validates() {
        let specs = bundled_specs();
        assert_eq!(specs.len(), 6);
        for (spec, (name, _)) in specs.iter().zip(SPECS) {
            assert_eq!(spec.name, name);
            spec.validate().unwrap();
        }
        assert_eq!(comparison_specs().len(), 4);
        assert_eq!(comparison_reference().rows.len(), 32);
        assert!(bundled_spec("large-fmt").is_some());
        assert!(bundled_spec("nope").is_none());
    }
}
