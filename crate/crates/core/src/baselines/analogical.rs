//! Similarity-scaled analogical reasoning.

use std::fmt;
use std::str::FromStr;

use crate::error::{FuzzyError, Result};
use crate::measure::sm_from_dm;
use crate::set::{check_same_len, FuzzySetVector};

/// How the similarity modifies the rule's output set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AarsForm {
    /// `min(1, g / SM)`
    MoreOrLess,
    /// `g · SM`
    Reduction,
}

impl AarsForm {
    pub fn name(self) -> &'static str {
        match self {
            AarsForm::MoreOrLess => "more-or-less",
            AarsForm::Reduction => "reduction",
        }
    }

    pub fn modify(self, set: &FuzzySetVector, sm: f64) -> Result<FuzzySetVector> {
        match self {
            AarsForm::MoreOrLess => set.map(|g| (g / sm).min(1.0)),
            AarsForm::Reduction => set.map(|g| g * sm),
        }
    }
}

impl fmt::Display for AarsForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AarsForm {
    type Err = FuzzyError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "more-or-less" => Ok(AarsForm::MoreOrLess),
            "reduction" => Ok(AarsForm::Reduction),
            _ => Err(FuzzyError::UnknownMethod(format!("aars:{s}"))),
        }
    }
}

/// Modifies `B` by the similarity of `A*` to `A`.
pub fn aars_fmp(
    a: &FuzzySetVector,
    a_star: &FuzzySetVector,
    b: &FuzzySetVector,
    form: AarsForm,
) -> Result<FuzzySetVector> {
    check_same_len(a, a_star)?;
    form.modify(b, sm_from_dm(a_star, a)?)
}

/// Modifies `A` by the similarity of `B*` to `B`.
pub fn aars_fmt(
    a: &FuzzySetVector,
    b: &FuzzySetVector,
    b_star: &FuzzySetVector,
    form: AarsForm,
) -> Result<FuzzySetVector> {
    check_same_len(b, b_star)?;
    form.modify(a, sm_from_dm(b_star, b)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(g: &[f64]) -> FuzzySetVector {
        FuzzySetVector::new(g.to_vec()).unwrap()
    }

    #[test]
    fn identity_premise_returns_consequent() {
        let a = set(&[1.0, 0.3, 0.0]);
        let b = set(&[0.0, 0.4, 1.0, 0.2]);
        for form in [AarsForm::MoreOrLess, AarsForm::Reduction] {
            assert_eq!(aars_fmp(&a, &a, &b, form).unwrap(), b);
            assert_eq!(aars_fmt(&a, &b, &b, form).unwrap(), a);
        }
    }

    #[test]
    fn reduction_scales() {
        let b = set(&[0.0, 0.4, 1.0]);
        let out = AarsForm::Reduction.modify(&b, 0.5).unwrap();
        assert_eq!(out.grades(), &[0.0, 0.2, 0.5]);
        let out = AarsForm::MoreOrLess.modify(&b, 0.5).unwrap();
        assert_eq!(out.grades(), &[0.0, 0.8, 1.0]);
    }

    #[test]
    fn disjoint_premise_halves_consequent() {
        // dm = 1 → SM = 0.5
        let a = set(&[1.0, 0.0]);
        let b = set(&[0.0, 0.4, 1.0]);
        let out = aars_fmp(&a, &a.complement(), &b, AarsForm::Reduction).unwrap();
        assert_eq!(out.grades(), &[0.0, 0.2, 0.5]);
    }
}
