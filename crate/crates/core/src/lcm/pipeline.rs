use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::extend::{extend_grades, lcm, select_anchors, ExtendedVector};
use crate::error::{FuzzyError, Result};
use crate::measure::rms_distance;
use crate::set::{check_same_len, FuzzySetVector};

/// Below this spread a quasi result is treated as constant.
pub const DEGENERATE_SPREAD: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Fmp,
    Fmt,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Fmp => "fmp",
            Direction::Fmt => "fmt",
        })
    }
}

impl FromStr for Direction {
    type Err = FuzzyError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fmp" => Ok(Direction::Fmp),
            "fmt" => Ok(Direction::Fmt),
            _ => Err(FuzzyError::InvalidParameter(format!("direction `{s}`"))),
        }
    }
}

/// How premise/antecedent differences become signs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SignForm {
    /// `+1 / 0 / -1` for positive / zero / negative differences.
    #[serde(rename = "p3")]
    ThreeValued,
    /// `+1` for non-negative differences, `-1` otherwise.
    #[serde(rename = "p2")]
    TwoValued,
}

impl SignForm {
    pub fn name(self) -> &'static str {
        match self {
            SignForm::ThreeValued => "p3",
            SignForm::TwoValued => "p2",
        }
    }
}

impl fmt::Display for SignForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SignForm {
    type Err = FuzzyError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "p3" => Ok(SignForm::ThreeValued),
            "p2" => Ok(SignForm::TwoValued),
            _ => Err(FuzzyError::InvalidParameter(format!("sign form `{s}`"))),
        }
    }
}

/// Premise kind of a reductive-property test.
///
/// Cases 1–5 are forward (modus ponens) premises A, A², A^½, 1−A and a
/// tilted A; cases 6–10 are the backward (modus tollens) counterparts
/// 1−B, 1−B², 1−B^½, B and a tilted B.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CaseTag {
    Case1,
    Case2,
    Case3,
    Case4,
    Case5,
    Case6,
    Case7,
    Case8,
    Case9,
    Case10,
}

impl CaseTag {
    pub const ALL: [CaseTag; 10] = [
        CaseTag::Case1,
        CaseTag::Case2,
        CaseTag::Case3,
        CaseTag::Case4,
        CaseTag::Case5,
        CaseTag::Case6,
        CaseTag::Case7,
        CaseTag::Case8,
        CaseTag::Case9,
        CaseTag::Case10,
    ];

    pub fn number(self) -> u8 {
        self as u8 + 1
    }

    pub fn from_number(n: u8) -> Result<Self> {
        Self::ALL
            .get(usize::from(n).wrapping_sub(1))
            .copied()
            .ok_or_else(|| FuzzyError::InvalidParameter(format!("case {n}")))
    }

    pub fn direction(self) -> Direction {
        if self.number() <= 5 {
            Direction::Fmp
        } else {
            Direction::Fmt
        }
    }

    /// Position within its direction, 1..=5.
    pub fn ordinal(self) -> u8 {
        (self.number() - 1) % 5 + 1
    }

    pub fn is_tilted(self) -> bool {
        self.ordinal() == 5
    }

    pub fn check_direction(self, direction: Direction) -> Result<()> {
        if self.direction() != direction {
            return Err(FuzzyError::InvalidCase {
                case: self.to_string(),
                direction: direction.to_string(),
            });
        }
        Ok(())
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "case{}", self.number())
    }
}

impl FromStr for CaseTag {
    type Err = FuzzyError;

    fn from_str(s: &str) -> Result<Self> {
        s.strip_prefix("case")
            .and_then(|n| n.parse::<u8>().ok())
            .map(CaseTag::from_number)
            .unwrap_or_else(|| Err(FuzzyError::InvalidParameter(format!("case `{s}`"))))
    }
}

/// The vector the signed distance is added to before anchor selection.
///
/// Forward inference adds to the consequent B̃ (`Direct`), to 1−B̃
/// (`Complement`) or to an extended tilt vector. Backward inference does
/// the same with the antecedent Ã.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    Direct,
    Complement,
    Tilted,
}

impl Branch {
    pub fn default_for(case: CaseTag) -> Branch {
        match case {
            CaseTag::Case1 | CaseTag::Case2 | CaseTag::Case3 | CaseTag::Case9 => Branch::Direct,
            CaseTag::Case4 | CaseTag::Case6 | CaseTag::Case7 | CaseTag::Case8 => {
                Branch::Complement
            }
            CaseTag::Case5 | CaseTag::Case10 => Branch::Tilted,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LcmInferenceResult {
    pub result: FuzzySetVector,
    pub distance: f64,
    /// Sign of every extended difference, length Θ.
    pub signs: Vec<i8>,
    /// Selected anchors before normalization; may leave `[0, 1]`.
    pub quasi: Vec<f64>,
    pub theta: usize,
    pub degenerate: bool,
}

/// Elementwise sign of `dif` in the chosen form.
pub fn sign_vector(dif: &[f64], form: SignForm) -> Vec<i8> {
    dif.iter()
        .map(|&d| match form {
            SignForm::ThreeValued if d == 0.0 => 0,
            _ if d >= 0.0 => 1,
            _ => -1,
        })
        .collect()
}

/// Root-mean-square distance between two extended vectors of equal Θ.
pub fn lcm_distance(a: &ExtendedVector, b: &ExtendedVector) -> Result<f64> {
    rms_distance(a.values(), b.values())
}

/// Min–max rescales `quasi` onto `[0, 1]`.
///
/// Returns the set and whether the input was degenerate (constant up to
/// [`DEGENERATE_SPREAD`]); a degenerate input is clamped instead.
pub fn normalize(quasi: &[f64]) -> Result<(FuzzySetVector, bool)> {
    if quasi.iter().any(|x| !x.is_finite()) {
        return Err(FuzzyError::InvalidParameter("non-finite quasi result".into()));
    }
    let lo = quasi.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = quasi.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let spread = hi - lo;
    if !(spread >= DEGENERATE_SPREAD) {
        let clamped = quasi.iter().map(|x| x.clamp(0.0, 1.0)).collect();
        return Ok((FuzzySetVector::new(clamped)?, true));
    }
    let scaled = quasi.iter().map(|x| (x - lo) / spread).collect();
    Ok((FuzzySetVector::new(scaled)?, false))
}

/// Shared eight-stage core. `reference` is what the premise is compared
/// against; `target` is the vector whose length the result takes.
fn run_pipeline(
    reference: &[f64],
    premise: &[f64],
    target: &[f64],
    branch: Branch,
    tilt: Option<&FuzzySetVector>,
    form: SignForm,
) -> Result<LcmInferenceResult> {
    crate::set::check_lengths(reference.len(), premise.len())?;
    let theta = lcm(reference.len(), target.len())?;
    let ref_ext = extend_grades(reference, theta)?;
    let premise_ext = extend_grades(premise, theta)?;

    let dif: Vec<f64> = premise_ext
        .values()
        .iter()
        .zip(ref_ext.values())
        .map(|(p, r)| p - r)
        .collect();
    let distance = lcm_distance(&premise_ext, &ref_ext)?;
    let signs = sign_vector(&dif, form);

    let base = match branch {
        Branch::Direct => extend_grades(target, theta)?,
        Branch::Complement => extend_grades(target, theta)?.complement(),
        Branch::Tilted => {
            let tilt = tilt.ok_or(FuzzyError::TiltMissing)?;
            crate::set::check_lengths(tilt.len(), target.len())?;
            extend_grades(tilt.grades(), theta)?
        }
    };
    let stride = base.stride();
    let quasi_ext: Vec<f64> = base
        .values()
        .iter()
        .zip(&signs)
        .map(|(b, &s)| b + distance * f64::from(s))
        .collect();
    let quasi = select_anchors(&quasi_ext, stride);
    let (result, degenerate) = normalize(&quasi)?;
    Ok(LcmInferenceResult {
        result,
        distance,
        signs,
        quasi,
        theta,
        degenerate,
    })
}

/// Forward inference with an explicit Stage-5 branch.
///
/// `tilt` is required for [`Branch::Tilted`] and must have the
/// consequent's length.
pub fn fmp_lcm_branch(
    antecedent: &FuzzySetVector,
    premise: &FuzzySetVector,
    consequent: &FuzzySetVector,
    branch: Branch,
    tilt: Option<&FuzzySetVector>,
    form: SignForm,
) -> Result<LcmInferenceResult> {
    check_same_len(antecedent, premise)?;
    run_pipeline(
        antecedent.grades(),
        premise.grades(),
        consequent.grades(),
        branch,
        tilt,
        form,
    )
}

/// Forward inference: rule `A → B`, premise `A*`, result `B*`.
///
/// Case 5 needs a tilt; use [`fmp_lcm_tilted`].
pub fn fmp_lcm(
    antecedent: &FuzzySetVector,
    premise: &FuzzySetVector,
    consequent: &FuzzySetVector,
    case: CaseTag,
    form: SignForm,
) -> Result<LcmInferenceResult> {
    fmp_lcm_tilted(antecedent, premise, consequent, case, form, None)
}

pub fn fmp_lcm_tilted(
    antecedent: &FuzzySetVector,
    premise: &FuzzySetVector,
    consequent: &FuzzySetVector,
    case: CaseTag,
    form: SignForm,
    tilt: Option<&FuzzySetVector>,
) -> Result<LcmInferenceResult> {
    case.check_direction(Direction::Fmp)?;
    fmp_lcm_branch(
        antecedent,
        premise,
        consequent,
        Branch::default_for(case),
        tilt,
        form,
    )
}

/// Backward inference with an explicit Stage-5 branch.
///
/// The premise `B*` is compared with `1 − B`; `tilt` must have the
/// antecedent's length.
pub fn fmt_lcm_branch(
    consequent: &FuzzySetVector,
    premise: &FuzzySetVector,
    antecedent: &FuzzySetVector,
    branch: Branch,
    tilt: Option<&FuzzySetVector>,
    form: SignForm,
) -> Result<LcmInferenceResult> {
    check_same_len(consequent, premise)?;
    let reference = consequent.complement();
    run_pipeline(
        reference.grades(),
        premise.grades(),
        antecedent.grades(),
        branch,
        tilt,
        form,
    )
}

/// Backward inference: rule `A → B`, premise `B*`, result `A*`.
pub fn fmt_lcm(
    consequent: &FuzzySetVector,
    premise: &FuzzySetVector,
    antecedent: &FuzzySetVector,
    case: CaseTag,
    form: SignForm,
) -> Result<LcmInferenceResult> {
    fmt_lcm_tilted(consequent, premise, antecedent, case, form, None)
}

pub fn fmt_lcm_tilted(
    consequent: &FuzzySetVector,
    premise: &FuzzySetVector,
    antecedent: &FuzzySetVector,
    case: CaseTag,
    form: SignForm,
    tilt: Option<&FuzzySetVector>,
) -> Result<LcmInferenceResult> {
    case.check_direction(Direction::Fmt)?;
    fmt_lcm_branch(
        consequent,
        premise,
        antecedent,
        Branch::default_for(case),
        tilt,
        form,
    )
}

/// Forward inference over several premises with one rule.
pub fn fmp_lcm_batch(
    antecedent: &FuzzySetVector,
    premises: &[FuzzySetVector],
    consequent: &FuzzySetVector,
    case: CaseTag,
    form: SignForm,
) -> Result<Vec<LcmInferenceResult>> {
    premises
        .iter()
        .map(|p| fmp_lcm(antecedent, p, consequent, case, form))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lcm::extend::lcm_extend;
    use crate::measure::dm_distance;
    use proptest::prelude::*;

    fn set(g: &[f64]) -> FuzzySetVector {
        FuzzySetVector::new(g.to_vec()).unwrap()
    }

    fn assert_close(got: &[f64], want: &[f64], tol: f64) {
        assert_eq!(got.len(), want.len(), "{got:?} vs {want:?}");
        for (g, w) in got.iter().zip(want) {
            assert!((g - w).abs() < tol, "{got:?} vs {want:?}");
        }
    }

    fn forward_example() -> (FuzzySetVector, FuzzySetVector, FuzzySetVector) {
        (
            set(&[1.0, 0.8, 0.4, 0.0]),
            set(&[1.0, 0.9, 0.3, 0.0]),
            set(&[0.0, 0.2, 0.4, 0.7, 0.9, 1.0]),
        )
    }

    fn backward_example() -> (FuzzySetVector, FuzzySetVector, FuzzySetVector) {
        // rule consequent B = 1 - [1, .8, .6, .3, .1, 0], antecedent A = 1 - [0, .2, .6, 1]
        (
            set(&[1.0, 0.8, 0.6, 0.3, 0.1, 0.0]).complement(),
            set(&[1.0, 0.9, 0.8, 0.3, 0.1, 0.0]),
            set(&[0.0, 0.2, 0.6, 1.0]).complement(),
        )
    }

    #[test]
    fn forward_example_three_valued() {
        let (a, a_star, b) = forward_example();
        let r = fmp_lcm(&a, &a_star, &b, CaseTag::Case1, SignForm::ThreeValued).unwrap();
        assert_close(
            r.result.grades(),
            &[0.0, 0.2527, 0.4527, 0.6473, 0.8473, 1.0],
            5e-4,
        );
        assert!((r.distance - 0.05270).abs() < 5e-5);
        assert_eq!(r.theta, 12);
        assert!(!r.degenerate);
    }

    #[test]
    fn forward_example_two_valued() {
        let (a, a_star, b) = forward_example();
        let r = fmp_lcm(&a, &a_star, &b, CaseTag::Case1, SignForm::TwoValued).unwrap();
        assert_close(
            r.result.grades(),
            &[0.0, 0.2, 0.4, 0.5946, 0.7946, 1.0],
            5e-4,
        );
        assert_close(
            &r.quasi,
            &[0.0527, 0.2527, 0.4527, 0.6473, 0.8473, 1.0527],
            5e-4,
        );
    }

    #[test]
    fn backward_example_both_forms() {
        let (b, b_star, a) = backward_example();
        let r3 = fmt_lcm(&b, &b_star, &a, CaseTag::Case6, SignForm::ThreeValued).unwrap();
        assert_close(r3.result.grades(), &[0.0, 0.2184, 0.5632, 1.0], 5e-4);
        assert!((r3.distance - 0.08416).abs() < 5e-5);
        let r2 = fmt_lcm(&b, &b_star, &a, CaseTag::Case6, SignForm::TwoValued).unwrap();
        assert_close(r2.result.grades(), &[0.0, 0.2, 0.6, 1.0], 5e-4);
    }

    #[test]
    fn distance_matches_plain_rms_on_extensions() {
        let (a, a_star, _) = forward_example();
        let ea = lcm_extend(&a, 12).unwrap();
        let es = lcm_extend(&a_star, 12).unwrap();
        let d = lcm_distance(&ea, &es).unwrap();
        let oracle = dm_distance(&set(ea.values()), &set(es.values())).unwrap();
        assert_eq!(d, oracle);
        assert!((d - 0.052705).abs() < 1e-6);
    }

    #[test]
    fn very_premise_on_five_point_rule() {
        let g = set(&[0.0, 0.25, 0.5, 0.75, 1.0]);
        let very = g.apply_hedge(&crate::set::Hedge::Very).unwrap();
        let r = fmp_lcm(&g, &very, &g, CaseTag::Case2, SignForm::ThreeValued).unwrap();
        assert_close(r.result.grades(), &[0.0, 0.087, 0.337, 0.587, 1.0], 5e-4);
    }

    #[test]
    fn sign_examples() {
        let dif = [0.0, 0.1, -0.1];
        assert_eq!(sign_vector(&dif, SignForm::ThreeValued), vec![0, 1, -1]);
        assert_eq!(sign_vector(&dif, SignForm::TwoValued), vec![1, 1, -1]);
        assert_eq!(sign_vector(&[0.0; 4], SignForm::ThreeValued), vec![0; 4]);
    }

    #[test]
    fn normalize_examples() {
        let (s, degenerate) =
            normalize(&[0.0527, 0.2527, 0.4527, 0.6473, 0.8473, 1.0527]).unwrap();
        assert!(!degenerate);
        assert_close(s.grades(), &[0.0, 0.2, 0.4, 0.5946, 0.7946, 1.0], 5e-5);
        let (s, _) = normalize(&[0.0, 0.5, 1.0]).unwrap();
        assert_eq!(s.grades(), &[0.0, 0.5, 1.0]);
        let (s, degenerate) = normalize(&[1.3, 1.3, 1.3]).unwrap();
        assert!(degenerate);
        assert_eq!(s.grades(), &[1.0, 1.0, 1.0]);
        assert!(normalize(&[0.1]).is_err());
    }

    #[test]
    fn case_direction_is_enforced() {
        let (a, a_star, b) = forward_example();
        assert!(matches!(
            fmp_lcm(&a, &a_star, &b, CaseTag::Case6, SignForm::ThreeValued),
            Err(FuzzyError::InvalidCase { .. })
        ));
        assert_eq!(
            fmp_lcm(&a, &a_star, &b, CaseTag::Case5, SignForm::ThreeValued),
            Err(FuzzyError::TiltMissing)
        );
        let short = set(&[1.0, 0.0]);
        assert!(matches!(
            fmp_lcm(&a, &short, &b, CaseTag::Case1, SignForm::ThreeValued),
            Err(FuzzyError::LengthMismatch { .. })
        ));
    }

    #[test]
    fn case_tags_parse_and_print() {
        for c in CaseTag::ALL {
            assert_eq!(c.to_string().parse::<CaseTag>().unwrap(), c);
        }
        assert!("case11".parse::<CaseTag>().is_err());
        assert!("case0".parse::<CaseTag>().is_err());
        assert_eq!(serde_json::to_string(&CaseTag::Case10).unwrap(), "\"case10\"");
        assert_eq!(serde_json::to_string(&SignForm::TwoValued).unwrap(), "\"p2\"");
    }

    #[test]
    fn batch_maps_premises() {
        let (a, a_star, b) = forward_example();
        let out = fmp_lcm_batch(
            &a,
            &[a.clone(), a_star],
            &b,
            CaseTag::Case1,
            SignForm::ThreeValued,
        )
        .unwrap();
        assert_eq!(out.len(), 2);
        assert_eq!(out[0].result, b);
    }

    /// A random vector of length `n` that contains both 0 and 1.
    fn normal_vec(n: usize) -> impl Strategy<Value = Vec<f64>> {
        (prop::collection::vec(0.0f64..=1.0, n), 0..n, 0..n).prop_map(move |(mut v, i, j)| {
            v[i] = 0.0;
            v[if i == j { (j + 1) % n } else { j }] = 1.0;
            v
        })
    }

    fn sized_pair() -> impl Strategy<Value = (Vec<f64>, Vec<f64>)> {
        (2usize..10, 2usize..10).prop_flat_map(|(u, v)| (normal_vec(u), normal_vec(v)))
    }

    proptest! {
        #[test]
        fn forward_identity_premise_reproduces_consequent((a, b) in sized_pair()) {
            let (a, b) = (set(&a), set(&b));
            for form in [SignForm::ThreeValued, SignForm::TwoValued] {
                let r = fmp_lcm(&a, &a, &b, CaseTag::Case1, form).unwrap();
                prop_assert_eq!(r.distance, 0.0);
                prop_assert_eq!(&r.result, &b);
            }
        }

        #[test]
        fn backward_identity_premise_reproduces_complement((a, b) in sized_pair()) {
            let (a, b) = (set(&a), set(&b));
            for form in [SignForm::ThreeValued, SignForm::TwoValued] {
                let r = fmt_lcm(&b, &b.complement(), &a, CaseTag::Case6, form).unwrap();
                prop_assert_eq!(r.distance, 0.0);
                let expected = a.complement();
                prop_assert_eq!(r.result.grades(), expected.grades());
            }
        }

        #[test]
        fn results_are_normalized(
            (a, b) in sized_pair(),
            premise in prop::collection::vec(0.0f64..=1.0, 9),
        ) {
            let (a_set, b_set) = (set(&a), set(&b));
            let p = set(&premise[..a.len()]);
            for form in [SignForm::ThreeValued, SignForm::TwoValued] {
                let r = fmp_lcm(&a_set, &p, &b_set, CaseTag::Case1, form).unwrap();
                if !r.degenerate {
                    prop_assert_eq!(r.result.min_grade(), 0.0);
                    prop_assert_eq!(r.result.max_grade(), 1.0);
                }
            }
        }

        #[test]
        fn forms_agree_without_zero_differences(
            (a, b) in sized_pair(),
            premise in prop::collection::vec(0.0f64..=1.0, 9),
        ) {
            let (a_set, b_set) = (set(&a), set(&b));
            let p = set(&premise[..a.len()]);
            let r3 = fmp_lcm(&a_set, &p, &b_set, CaseTag::Case1, SignForm::ThreeValued).unwrap();
            if r3.signs.iter().all(|&s| s != 0) {
                let r2 = fmp_lcm(&a_set, &p, &b_set, CaseTag::Case1, SignForm::TwoValued).unwrap();
                prop_assert_eq!(r3.result, r2.result);
            }
        }

        #[test]
        fn closer_premise_deviates_less(
            (a, b) in sized_pair(),
            p1 in prop::collection::vec(0.0f64..=1.0, 9),
            p2 in prop::collection::vec(0.0f64..=1.0, 9),
        ) {
            let (a_set, b_set) = (set(&a), set(&b));
            let n = a.len();
            let deviation = |p: &[f64]| {
                let r = fmp_lcm(&a_set, &set(p), &b_set, CaseTag::Case1, SignForm::TwoValued).unwrap();
                let m = r.theta / b.len();
                let base = lcm_extend(&b_set, r.theta).unwrap();
                let anchors = select_anchors(base.values(), m);
                let dev = r.quasi.iter().zip(&anchors).map(|(q, b)| (q - b).abs()).fold(0.0, f64::max);
                (r.distance, dev)
            };
            let (d1, dev1) = deviation(&p1[..n]);
            let (d2, dev2) = deviation(&p2[..n]);
            prop_assert!((dev1 - d1).abs() < 1e-12 && (dev2 - d2).abs() < 1e-12);
            if d1 < d2 - 1e-9 {
                prop_assert!(dev1 < dev2);
            }
        }
    }
}
