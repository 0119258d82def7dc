//! Uniform selector over every reasoning method.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::baselines::{
    aars_fmp, aars_fmt, build_relation, cri_fmp, cri_fmt, qip_fmp, qip_fmt, tip_fmp, tip_fmt,
    AarsForm, RelationKind,
};
use crate::error::{FuzzyError, Result};
use crate::lcm::{fmp_lcm_branch, fmt_lcm_branch, Branch, CaseTag, Direction, SignForm};
use crate::logic::Implication;
use crate::set::FuzzySetVector;

/// Serialized as its selector string, e.g. `"cri:godel"`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum InferenceMethod {
    Lcm(SignForm),
    /// Compositional rule with the implication's adjoint t-norm.
    Cri(Implication),
    Tip(Implication),
    Qip(Implication),
    Aars(AarsForm),
    /// Sup–min composition with a relation matrix.
    Relation(RelationKind),
}

/// Which premise case is being evaluated; only the LCM method reads it.
#[derive(Debug, Clone, Copy)]
pub struct CaseContext<'a> {
    pub case: CaseTag,
    pub branch: Branch,
    pub tilt: Option<&'a FuzzySetVector>,
}

impl<'a> CaseContext<'a> {
    pub fn new(case: CaseTag) -> Self {
        Self {
            case,
            branch: Branch::default_for(case),
            tilt: None,
        }
    }

    pub fn with_tilt(mut self, tilt: Option<&'a FuzzySetVector>) -> Self {
        self.tilt = tilt;
        self
    }

    pub fn with_branch(mut self, branch: Option<Branch>) -> Self {
        if let Some(b) = branch {
            self.branch = b;
        }
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Inference {
    pub result: FuzzySetVector,
    /// Premise distance, reported by the LCM method only.
    pub distance: Option<f64>,
    pub degenerate: bool,
}

impl From<FuzzySetVector> for Inference {
    fn from(result: FuzzySetVector) -> Self {
        Self {
            result,
            distance: None,
            degenerate: false,
        }
    }
}

impl InferenceMethod {
    /// The four method families compared against LCM, plus LCM itself and
    /// the relation family.
    pub fn family(self) -> &'static str {
        match self {
            InferenceMethod::Lcm(_) => "LCM",
            InferenceMethod::Cri(_) => "CRI",
            InferenceMethod::Tip(_) => "TIP",
            InferenceMethod::Qip(_) => "QIP",
            InferenceMethod::Aars(_) => "AARS",
            InferenceMethod::Relation(_) => "REL",
        }
    }

    /// The sixteen methods of the standard comparison, in table order.
    pub fn comparison_set() -> Vec<InferenceMethod> {
        use Implication::*;
        let mut out = vec![
            InferenceMethod::Lcm(SignForm::ThreeValued),
            InferenceMethod::Lcm(SignForm::TwoValued),
        ];
        out.extend([Godel, Goguen, Lukasiewicz, R0].map(InferenceMethod::Cri));
        out.extend([Godel, Goguen, Lukasiewicz, R0].map(InferenceMethod::Tip));
        out.extend([Lukasiewicz, Godel, R0, Goguen].map(InferenceMethod::Qip));
        out.push(InferenceMethod::Aars(AarsForm::Reduction));
        out.push(InferenceMethod::Aars(AarsForm::MoreOrLess));
        out
    }

    pub fn infer(
        self,
        direction: Direction,
        antecedent: &FuzzySetVector,
        consequent: &FuzzySetVector,
        premise: &FuzzySetVector,
        ctx: CaseContext<'_>,
    ) -> Result<Inference> {
        let (a, b, p) = (antecedent, consequent, premise);
        let fwd = direction == Direction::Fmp;
        let out = match self {
            InferenceMethod::Lcm(form) => {
                ctx.case.check_direction(direction)?;
                let r = if fwd {
                    fmp_lcm_branch(a, p, b, ctx.branch, ctx.tilt, form)?
                } else {
                    fmt_lcm_branch(b, p, a, ctx.branch, ctx.tilt, form)?
                };
                return Ok(Inference {
                    result: r.result,
                    distance: Some(r.distance),
                    degenerate: r.degenerate,
                });
            }
            InferenceMethod::Cri(imp) if fwd => cri_fmp(a, p, b, imp, imp.adjoint_tnorm())?,
            InferenceMethod::Cri(imp) => cri_fmt(a, b, p, imp, imp.adjoint_tnorm())?,
            InferenceMethod::Tip(imp) if fwd => tip_fmp(a, p, b, imp)?,
            InferenceMethod::Tip(imp) => tip_fmt(a, b, p, imp)?,
            InferenceMethod::Qip(imp) if fwd => qip_fmp(a, p, b, imp)?,
            InferenceMethod::Qip(imp) => qip_fmt(a, b, p, imp)?,
            InferenceMethod::Aars(form) if fwd => aars_fmp(a, p, b, form)?,
            InferenceMethod::Aars(form) => aars_fmt(a, b, p, form)?,
            InferenceMethod::Relation(kind) if fwd => build_relation(kind, a, b).compose_forward(p)?,
            InferenceMethod::Relation(kind) => build_relation(kind, a, b).compose_backward(p)?,
        };
        Ok(out.into())
    }
}

impl fmt::Display for InferenceMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InferenceMethod::Lcm(form) => write!(f, "lcm:{form}"),
            InferenceMethod::Cri(imp) => write!(f, "cri:{imp}"),
            InferenceMethod::Tip(imp) => write!(f, "tip:{imp}"),
            InferenceMethod::Qip(imp) => write!(f, "qip:{imp}"),
            InferenceMethod::Aars(form) => write!(f, "aars:{form}"),
            InferenceMethod::Relation(kind) => write!(f, "rel:{kind}"),
        }
    }
}

impl FromStr for InferenceMethod {
    type Err = FuzzyError;

    fn from_str(s: &str) -> Result<Self> {
        let unknown = || FuzzyError::UnknownMethod(s.to_string());
        let (family, arg) = s.split_once(':').ok_or_else(unknown)?;
        let imp = || arg.parse::<Implication>().map_err(|_| unknown());
        Ok(match family {
            "lcm" => InferenceMethod::Lcm(arg.parse().map_err(|_| unknown())?),
            "cri" => InferenceMethod::Cri(imp()?),
            "tip" => InferenceMethod::Tip(imp()?),
            "qip" => InferenceMethod::Qip(imp()?),
            "aars" => InferenceMethod::Aars(arg.parse().map_err(|_| unknown())?),
            "rel" => InferenceMethod::Relation(arg.parse().map_err(|_| unknown())?),
            _ => return Err(unknown()),
        })
    }
}

impl TryFrom<String> for InferenceMethod {
    type Error = FuzzyError;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<InferenceMethod> for String {
    fn from(m: InferenceMethod) -> String {
        m.to_string()
    }
}

/// Parses a comma-separated selector list such as `lcm:p3,cri:godel`.
pub fn parse_method_list(s: &str) -> Result<Vec<InferenceMethod>> {
    s.split(',')
        .map(str::trim)
        .filter(|part| !part.is_empty())
        .map(str::parse)
        .collect()
}
