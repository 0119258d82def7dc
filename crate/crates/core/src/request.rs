//! JSON inference request and response.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::lcm::{Branch, CaseTag, Direction, SignForm};
use crate::method::{CaseContext, InferenceMethod};
use crate::set::FuzzySetVector;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Rule {
    pub antecedent: FuzzySetVector,
    pub consequent: FuzzySetVector,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InferenceRequest {
    pub rule: Rule,
    pub premise: FuzzySetVector,
    pub direction: Direction,
    pub case: CaseTag,
    #[serde(default = "default_form")]
    pub form: SignForm,
    /// Method selector such as `cri:godel`; overrides `form` when set.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub method: Option<String>,
    /// Explicit tilted vector for the tilted cases.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tilt: Option<FuzzySetVector>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub branch: Option<Branch>,
}

fn default_form() -> SignForm {
    SignForm::ThreeValued
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InferenceResponse {
    pub result: Vec<f64>,
    pub distance: Option<f64>,
    pub degenerate: bool,
}

impl InferenceRequest {
    pub fn resolve_method(&self, override_method: Option<InferenceMethod>) -> Result<InferenceMethod> {
        if let Some(m) = override_method {
            return Ok(m);
        }
        match &self.method {
            Some(s) => s.parse(),
            None => Ok(InferenceMethod::Lcm(self.form)),
        }
    }

    pub fn run(&self, override_method: Option<InferenceMethod>) -> Result<InferenceResponse> {
        let method = self.resolve_method(override_method)?;
        let ctx = CaseContext::new(self.case)
            .with_tilt(self.tilt.as_ref())
            .with_branch(self.branch);
        let out = method.infer(
            self.direction,
            &self.rule.antecedent,
            &self.rule.consequent,
            &self.premise,
            ctx,
        )?;
        Ok(InferenceResponse {
            result: out.result.into_grades(),
            distance: out.distance,
            degenerate: out.degenerate,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const FORWARD: &str = r#"{
        "rule": {"antecedent": {"grades": [1, 0.8, 0.4, 0]},
                 "consequent": {"grades": [0, 0.2, 0.4, 0.7, 0.9, 1]}},
        "premise": {"grades": [1, 0.9, 0.3, 0]},
        "direction": "fmp", "case": "case1", "form": "p3"
    }"#;

    #[test]
    fn forward_request_round_trip() {
        let req: InferenceRequest = serde_json::from_str(FORWARD).unwrap();
        let resp = req.run(None).unwrap();
        let want = [0.0, 0.2527, 0.4527, 0.6473, 0.8473, 1.0];
        for (g, w) in resp.result.iter().zip(want) {
            assert!((g - w).abs() < 5e-4);
        }
        assert!(!resp.degenerate);
        assert!((resp.distance.unwrap() - 0.0527).abs() < 1e-4);

        let text = serde_json::to_string(&resp).unwrap();
        assert!(text.starts_with("{\"result\":["));
        let back: InferenceResponse = serde_json::from_str(&text).unwrap();
        assert_eq!(back, resp);
    }

    #[test]
    fn method_field_and_override() {
        let mut req: InferenceRequest = serde_json::from_str(FORWARD).unwrap();
        req.method = Some("cri:godel".into());
        assert_eq!(
            req.resolve_method(None).unwrap(),
            InferenceMethod::Cri(crate::logic::Implication::Godel)
        );
        assert_eq!(req.run(None).unwrap().distance, None);
        let p2 = InferenceMethod::Lcm(SignForm::TwoValued);
        assert_eq!(req.resolve_method(Some(p2)).unwrap(), p2);
        req.method = Some("nope".into());
        assert!(req.run(None).is_err());
    }

    #[test]
    fn rejects_invalid_json_fields() {
        let bad = FORWARD.replace("\"case1\"", "\"case11\"");
        assert!(serde_json::from_str::<InferenceRequest>(&bad).is_err());
        let bad = FORWARD.replace("[1, 0.9, 0.3, 0]", "[1, 1.9, 0.3, 0]");
        assert!(serde_json::from_str::<InferenceRequest>(&bad).is_err());
        let bad = FORWARD.replace("\"fmp\"", "\"forward\"");
        assert!(serde_json::from_str::<InferenceRequest>(&bad).is_err());
    }
}
