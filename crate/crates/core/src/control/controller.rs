use serde::{Deserialize, Serialize};

use crate::baselines::RelationKind;
use crate::error::{FuzzyError, Result};
use crate::lcm::{fmp_lcm_branch, lcm_extend, Branch, SignForm};
use crate::method::InferenceMethod;
use crate::set::{check_lengths, FuzzySetVector};

/// Points per universe in the standard controller.
pub const DEFAULT_POINTS: usize = 41;
/// Terms per partition in the standard controller (NB, NS, ZE, PS, PB).
pub const DEFAULT_TERMS: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind", deny_unknown_fields)]
pub enum Fuzzification {
    /// Grade 1 at the nearest universe point.
    #[default]
    Singleton,
    /// Triangle centred on the value with half-width `spread`.
    Triangular { spread: f64 },
}

/// Two-input rule base `e × Δe → Δu` with the inference backend and gain.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ControllerConfig {
    pub error_universe: Vec<f64>,
    pub delta_universe: Vec<f64>,
    pub output_universe: Vec<f64>,
    pub error_terms: Vec<FuzzySetVector>,
    pub delta_terms: Vec<FuzzySetVector>,
    pub output_terms: Vec<FuzzySetVector>,
    /// `rules[i][j]` is the output term for error term `i` and Δerror term `j`.
    pub rules: Vec<Vec<usize>>,
    pub rho: f64,
    pub backend: InferenceMethod,
    #[serde(default)]
    pub fuzzification: Fuzzification,
}

pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..n)
            .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
            .collect(),
    }
}

/// `count` triangles with evenly spaced centres spanning the universe and
/// half-width equal to the centre spacing.
pub fn triangular_partition(universe: &[f64], count: usize) -> Result<Vec<FuzzySetVector>> {
    let (lo, hi) = match (universe.first(), universe.last()) {
        (Some(&lo), Some(&hi)) if count >= 2 && hi > lo => (lo, hi),
        _ => {
            return Err(FuzzyError::InvalidParameter(
                "partition needs an increasing universe and at least two terms".into(),
            ))
        }
    };
    let centres = linspace(lo, hi, count);
    let width = centres[1] - centres[0];
    centres
        .iter()
        .map(|c| {
            let grades = universe
                .iter()
                .map(|x| (1.0 - (x - c).abs() / width).clamp(0.0, 1.0))
                .collect();
            FuzzySetVector::new(grades)
        })
        .collect()
}

/// Anti-diagonal PD table: output index `clamp(i + j − centre)`.
pub fn anti_diagonal_rules(terms: usize) -> Vec<Vec<usize>> {
    let centre = (terms as isize - 1) / 2;
    let top = terms as isize - 1;
    (0..terms as isize)
        .map(|i| {
            (0..terms as isize)
                .map(|j| (i + j - centre).clamp(0, top) as usize)
                .collect()
        })
        .collect()
}

fn check_universe(u: &[f64]) -> Result<()> {
    if u.len() < 2 {
        return Err(FuzzyError::TooShort(u.len()));
    }
    if let Some(i) = u.windows(2).position(|w| !(w[1] > w[0])) {
        return Err(FuzzyError::UniverseNotIncreasing(i + 1));
    }
    Ok(())
}

fn check_terms(terms: &[FuzzySetVector], universe: &[f64]) -> Result<()> {
    if terms.is_empty() {
        return Err(FuzzyError::InvalidParameter("empty term partition".into()));
    }
    for t in terms {
        if t.len() != universe.len() {
            return Err(FuzzyError::UniverseLength {
                grades: t.len(),
                universe: universe.len(),
            });
        }
    }
    Ok(())
}

impl ControllerConfig {
    /// The default controller: 41-point universes on error `[−40, 40]`,
    /// Δerror `[−4, 4]` and increment `[−2, 2]`, five triangular terms
    /// each, an anti-diagonal rule table and `ρ = 1`.
    pub fn standard(backend: InferenceMethod) -> Self {
        let universe = |r: f64| linspace(-r, r, DEFAULT_POINTS);
        let (eu, du, ou) = (universe(40.0), universe(4.0), universe(2.0));
        let part = |u: &[f64]| triangular_partition(u, DEFAULT_TERMS).expect("valid default universe");
        ControllerConfig {
            error_terms: part(&eu),
            delta_terms: part(&du),
            output_terms: part(&ou),
            error_universe: eu,
            delta_universe: du,
            output_universe: ou,
            rules: anti_diagonal_rules(DEFAULT_TERMS),
            rho: 1.0,
            backend,
            fuzzification: Fuzzification::Singleton,
        }
    }

    pub fn with_rho(mut self, rho: f64) -> Self {
        self.rho = rho;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rho > 0.0 && self.rho.is_finite()) {
            return Err(FuzzyError::InvalidParameter(format!(
                "gain must be positive, got {}",
                self.rho
            )));
        }
        check_universe(&self.error_universe)?;
        check_universe(&self.delta_universe)?;
        check_universe(&self.output_universe)?;
        check_terms(&self.error_terms, &self.error_universe)?;
        check_terms(&self.delta_terms, &self.delta_universe)?;
        check_terms(&self.output_terms, &self.output_universe)?;
        if self.rules.len() != self.error_terms.len()
            || self.rules.iter().any(|r| r.len() != self.delta_terms.len())
        {
            return Err(FuzzyError::InvalidParameter(format!(
                "rule table must be {}×{}",
                self.error_terms.len(),
                self.delta_terms.len()
            )));
        }
        if let Some(&o) = self.rules.iter().flatten().find(|&&o| o >= self.output_terms.len()) {
            return Err(FuzzyError::InvalidParameter(format!(
                "rule output term {o} out of range"
            )));
        }
        match self.backend {
            InferenceMethod::Lcm(_) | InferenceMethod::Relation(_) => {}
            other => {
                return Err(FuzzyError::InvalidParameter(format!(
                    "backend {other} cannot drive the controller; use lcm:* or rel:*"
                )))
            }
        }
        if let Fuzzification::Triangular { spread } = self.fuzzification {
            if !(spread > 0.0 && spread.is_finite()) {
                return Err(FuzzyError::InvalidParameter("fuzzification spread must be positive".into()));
            }
        }
        Ok(())
    }
}

fn nearest_index(value: f64, universe: &[f64]) -> usize {
    let mut best = 0;
    for (i, u) in universe.iter().enumerate() {
        // strict comparison keeps the lower index on ties
        if (u - value).abs() < (universe[best] - value).abs() {
            best = i;
        }
    }
    best
}

/// Fuzzifies a crisp value, clamped into the universe.
pub fn fuzzify(value: f64, universe: &[f64], method: Fuzzification) -> Result<FuzzySetVector> {
    check_universe(universe)?;
    if !value.is_finite() {
        return Err(FuzzyError::InvalidParameter(format!("cannot fuzzify {value}")));
    }
    let x = value.clamp(universe[0], universe[universe.len() - 1]);
    let mut grades = vec![0.0; universe.len()];
    if let Fuzzification::Triangular { spread } = method {
        for (g, u) in grades.iter_mut().zip(universe) {
            *g = (1.0 - (u - x).abs() / spread).max(0.0);
        }
    }
    if grades.iter().all(|&g| g == 0.0) {
        grades[nearest_index(x, universe)] = 1.0;
    }
    FuzzySetVector::new(grades)
}

/// `max_u min(input(u), term(u))`.
pub fn matching_degree(input: &FuzzySetVector, term: &FuzzySetVector) -> Result<f64> {
    check_lengths(input.len(), term.len())?;
    Ok(input
        .grades()
        .iter()
        .zip(term.grades())
        .map(|(a, b)| a.min(*b))
        .fold(0.0, f64::max))
}

/// Output of one fired rule: `R(h, μB(v))` at every output point.
pub fn rule_output(kind: RelationKind, h: f64, consequent: &FuzzySetVector) -> Vec<f64> {
    consequent.grades().iter().map(|&b| kind.entry(h, b)).collect()
}

/// Discrete centre of gravity; `None` when the set is empty.
pub fn centroid(grades: &[f64], universe: &[f64]) -> Option<f64> {
    let mass: f64 = grades.iter().sum();
    (mass > 0.0).then(|| grades.iter().zip(universe).map(|(g, v)| g * v).sum::<f64>() / mass)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Increment {
    pub du: f64,
    /// The aggregated output set was empty, so `du` was forced to 0.
    pub stalled: bool,
    /// Aggregated output set over the increment universe.
    pub output: Vec<f64>,
}

/// Infers `Δu` from crisp error and Δerror.
pub fn infer_increment(config: &ControllerConfig, e: f64, de: f64) -> Result<Increment> {
    let fe = fuzzify(e, &config.error_universe, config.fuzzification)?;
    let fde = fuzzify(de, &config.delta_universe, config.fuzzification)?;
    infer_from_sets(config, &fe, &fde)
}

/// Infers `Δu` from already fuzzified inputs.
pub fn infer_from_sets(
    config: &ControllerConfig,
    error: &FuzzySetVector,
    delta: &FuzzySetVector,
) -> Result<Increment> {
    check_lengths(error.len(), config.error_universe.len())?;
    check_lengths(delta.len(), config.delta_universe.len())?;
    match config.backend {
        InferenceMethod::Relation(kind) => relation_increment(config, kind, error, delta),
        InferenceMethod::Lcm(form) => lcm_increment(config, form, error, delta),
        other => Err(FuzzyError::InvalidParameter(format!(
            "backend {other} cannot drive the controller"
        ))),
    }
}

fn finish(output: Vec<f64>, universe: &[f64]) -> Increment {
    match centroid(&output, universe) {
        Some(du) => Increment {
            du,
            stalled: false,
            output,
        },
        None => Increment {
            du: 0.0,
            stalled: true,
            output,
        },
    }
}

fn rules(config: &ControllerConfig) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
    config
        .rules
        .iter()
        .enumerate()
        .flat_map(|(i, row)| row.iter().enumerate().map(move |(j, &o)| (i, j, o)))
}

fn relation_increment(
    config: &ControllerConfig,
    kind: RelationKind,
    error: &FuzzySetVector,
    delta: &FuzzySetVector,
) -> Result<Increment> {
    let mut aggregate = vec![0.0_f64; config.output_universe.len()];
    for (i, j, o) in rules(config) {
        let h = matching_degree(error, &config.error_terms[i])?
            .min(matching_degree(delta, &config.delta_terms[j])?);
        for (acc, r) in aggregate
            .iter_mut()
            .zip(rule_output(kind, h, &config.output_terms[o]))
        {
            *acc = acc.max(r);
        }
    }
    Ok(finish(aggregate, &config.output_universe))
}

/// Rule weight from the distance: `1 − d² / d₀²`, where `d₀²` is the
/// squared distance the premise would have to a disjoint antecedent.
fn lcm_weight(
    antecedent: &FuzzySetVector,
    premise: &FuzzySetVector,
    distance: f64,
    theta: usize,
) -> Result<f64> {
    let mean_sq = |g: &FuzzySetVector| -> Result<f64> {
        let ext = lcm_extend(g, theta)?;
        Ok(ext.values().iter().map(|x| x * x).sum::<f64>() / theta as f64)
    };
    let d0_sq = mean_sq(antecedent)? + mean_sq(premise)?;
    if d0_sq <= 0.0 {
        return Ok(1.0);
    }
    Ok((1.0 - distance * distance / d0_sq).max(0.0))
}

fn lcm_increment(
    config: &ControllerConfig,
    form: SignForm,
    error: &FuzzySetVector,
    delta: &FuzzySetVector,
) -> Result<Increment> {
    let n = config.output_universe.len();
    let mut weighted = vec![0.0; n];
    let mut total = 0.0;
    for (i, j, o) in rules(config) {
        let (ae, ad, b) = (
            &config.error_terms[i],
            &config.delta_terms[j],
            &config.output_terms[o],
        );
        let re = fmp_lcm_branch(ae, error, b, Branch::Direct, None, form)?;
        let rd = fmp_lcm_branch(ad, delta, b, Branch::Direct, None, form)?;
        if re.distance == 0.0 && rd.distance == 0.0 {
            return Ok(finish(b.grades().to_vec(), &config.output_universe));
        }
        let w = lcm_weight(ae, error, re.distance, re.theta)?
            .min(lcm_weight(ad, delta, rd.distance, rd.theta)?);
        if w == 0.0 {
            continue;
        }
        total += w;
        for ((acc, x), y) in weighted
            .iter_mut()
            .zip(re.result.grades())
            .zip(rd.result.grades())
        {
            *acc += w * (x + y) / 2.0;
        }
    }
    if total > 0.0 {
        weighted.iter_mut().for_each(|x| *x /= total);
    }
    Ok(finish(weighted, &config.output_universe))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::baselines::RelationKind;
    use proptest::prelude::*;

    fn rel(kind: RelationKind) -> ControllerConfig {
        ControllerConfig::standard(InferenceMethod::Relation(kind))
    }

    #[test]
    fn standard_config_is_valid() {
        let c = rel(RelationKind::Rc);
        c.validate().unwrap();
        assert_eq!(c.rules[0], vec![0, 0, 0, 1, 2]);
        assert_eq!(c.rules[4], vec![2, 3, 4, 4, 4]);
        assert_eq!(c.output_terms[2].grades()[20], 1.0);
    }

    #[test]
    fn invalid_configs_rejected() {
        assert!(rel(RelationKind::Rc).with_rho(0.0).validate().is_err());
        let mut c = rel(RelationKind::Rc);
        c.rules[1].pop();
        assert!(c.validate().is_err());
        let mut c = rel(RelationKind::Rc);
        c.rules[0][0] = 9;
        assert!(c.validate().is_err());
        let c = ControllerConfig::standard("cri:godel".parse().unwrap());
        assert!(c.validate().is_err());
    }

    #[test]
    fn singleton_fuzzification() {
        let u = [0.0, 1.0, 2.0, 3.0];
        assert_eq!(fuzzify(2.0, &u, Fuzzification::Singleton).unwrap().grades(), &[0.0, 0.0, 1.0, 0.0]);
        // ties go to the lower index
        assert_eq!(fuzzify(1.5, &u, Fuzzification::Singleton).unwrap().grades(), &[0.0, 1.0, 0.0, 0.0]);
        assert_eq!(fuzzify(-7.0, &u, Fuzzification::Singleton).unwrap().grades(), &[1.0, 0.0, 0.0, 0.0]);
        assert_eq!(fuzzify(99.0, &u, Fuzzification::Singleton).unwrap().grades(), &[0.0, 0.0, 0.0, 1.0]);
        let t = fuzzify(1.0, &u, Fuzzification::Triangular { spread: 2.0 }).unwrap();
        assert_eq!(t.grades(), &[0.5, 1.0, 0.5, 0.0]);
    }

    #[test]
    fn centroid_of_symmetric_set_is_centre() {
        let u = linspace(-2.0, 2.0, 5);
        assert_eq!(centroid(&[0.0, 0.5, 1.0, 0.5, 0.0], &u), Some(0.0));
        assert_eq!(centroid(&[0.0; 5], &u), None);
    }

    #[test]
    fn full_match_with_mamdani_returns_consequent() {
        let mut c = rel(RelationKind::Rc);
        // a single rule fires at h = 1 when the inputs sit on its peaks
        c.rules = vec![vec![4; 5]; 5];
        let inc = infer_increment(&c, 40.0, 4.0).unwrap();
        assert_eq!(inc.output, c.output_terms[4].grades());
        let expected = centroid(c.output_terms[4].grades(), &c.output_universe).unwrap();
        assert!((inc.du - expected).abs() < 1e-12);
    }

    #[test]
    fn sharp_backend_sees_idle_rules() {
        // a rule with h = 0 makes the sharp relation output all ones
        let c = rel(RelationKind::Rs);
        for e in [-40.0, -12.0, 0.0, 25.0, 40.0] {
            let inc = infer_increment(&c, e, 0.0).unwrap();
            assert!(inc.output.iter().all(|&x| x == 1.0));
            assert!(inc.du.abs() < 1e-12);
        }
    }

    #[test]
    fn lcm_exact_match_returns_consequent_centroid() {
        let c = ControllerConfig::standard(InferenceMethod::Lcm(SignForm::ThreeValued));
        let (i, j) = (3, 1);
        let o = c.rules[i][j];
        let inc = infer_from_sets(&c, &c.error_terms[i].clone(), &c.delta_terms[j].clone()).unwrap();
        let expected = centroid(c.output_terms[o].grades(), &c.output_universe).unwrap();
        assert_eq!(inc.du, expected);
        assert!(!inc.stalled);
    }

    #[test]
    fn lcm_increment_has_the_right_sign() {
        let c = ControllerConfig::standard(InferenceMethod::Lcm(SignForm::ThreeValued));
        assert!(infer_increment(&c, 30.0, 0.0).unwrap().du > 0.0);
        assert!(infer_increment(&c, -30.0, 0.0).unwrap().du < 0.0);
    }

    #[test]
    fn lcm_closer_input_gives_result_closer_to_consequent() {
        let b = FuzzySetVector::new(vec![0.0, 0.3, 1.0, 0.3, 0.0]).unwrap();
        let a = FuzzySetVector::new(vec![0.0, 0.5, 1.0, 0.5, 0.0]).unwrap();
        let near = FuzzySetVector::new(vec![0.0, 0.4, 1.0, 0.5, 0.0]).unwrap();
        let far = FuzzySetVector::new(vec![0.0, 0.0, 1.0, 0.0, 0.0]).unwrap();
        let gap = |p: &FuzzySetVector| {
            let r = fmp_lcm_branch(&a, p, &b, Branch::Direct, None, SignForm::ThreeValued).unwrap();
            r.result
                .grades()
                .iter()
                .zip(b.grades())
                .map(|(x, y)| (x - y).abs())
                .fold(0.0, f64::max)
        };
        assert!(gap(&near) < gap(&far));
    }

    proptest! {
        #[test]
        fn increment_stays_in_output_range(e in -60.0f64..60.0, de in -6.0f64..6.0, k in 0usize..11) {
            let backend = if k == 10 {
                InferenceMethod::Lcm(SignForm::ThreeValued)
            } else {
                InferenceMethod::Relation(RelationKind::ALL[k])
            };
            let c = ControllerConfig::standard(backend);
            let inc = infer_increment(&c, e, de).unwrap();
            prop_assert!(inc.du >= -2.0 - 1e-12 && inc.du <= 2.0 + 1e-12);
            prop_assert!(inc.output.iter().all(|g| (0.0..=1.0).contains(g)));
        }
    }
}
