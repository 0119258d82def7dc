//! Discrete fuzzy sets and the unary hedges used to build premises.

use serde::{Deserialize, Serialize};

use crate::error::{FuzzyError, Result};

/// A discrete fuzzy set: membership grades over an ordered universe.
///
/// Grades are validated at construction and never leave `[0, 1]`.
/// The universe is optional; when present it has one strictly
/// increasing coordinate per grade.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawSet")]
pub struct FuzzySetVector {
    grades: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    universe: Option<Vec<f64>>,
}

#[derive(Deserialize)]
struct RawSet {
    grades: Vec<f64>,
    #[serde(default)]
    universe: Option<Vec<f64>>,
}

impl TryFrom<RawSet> for FuzzySetVector {
    type Error = FuzzyError;

    fn try_from(raw: RawSet) -> Result<Self> {
        match raw.universe {
            Some(u) => FuzzySetVector::with_universe(raw.grades, u),
            None => FuzzySetVector::new(raw.grades),
        }
    }
}

impl FuzzySetVector {
    pub fn new(grades: Vec<f64>) -> Result<Self> {
        if grades.len() < 2 {
            return Err(FuzzyError::TooShort(grades.len()));
        }
        for (index, &value) in grades.iter().enumerate() {
            if !(0.0..=1.0).contains(&value) {
                return Err(FuzzyError::GradeOutOfRange { index, value });
            }
        }
        Ok(Self {
            grades,
            universe: None,
        })
    }

    pub fn with_universe(grades: Vec<f64>, universe: Vec<f64>) -> Result<Self> {
        let mut set = Self::new(grades)?;
        if universe.len() != set.grades.len() {
            return Err(FuzzyError::UniverseLength {
                grades: set.grades.len(),
                universe: universe.len(),
            });
        }
        if let Some(i) = universe.windows(2).position(|w| !(w[1] > w[0])) {
            return Err(FuzzyError::UniverseNotIncreasing(i + 1));
        }
        set.universe = Some(universe);
        Ok(set)
    }

    /// Copies `self`'s universe onto freshly computed grades.
    fn derive(&self, grades: Vec<f64>) -> Self {
        Self {
            grades,
            universe: self.universe.clone(),
        }
    }

    pub fn grades(&self) -> &[f64] {
        &self.grades
    }

    pub fn universe(&self) -> Option<&[f64]> {
        self.universe.as_deref()
    }

    pub fn len(&self) -> usize {
        self.grades.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grades.is_empty()
    }

    pub fn into_grades(self) -> Vec<f64> {
        self.grades
    }

    pub fn max_grade(&self) -> f64 {
        self.grades.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn min_grade(&self) -> f64 {
        self.grades.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Elementwise `1 - g`.
    pub fn complement(&self) -> Self {
        self.derive(self.grades.iter().map(|g| 1.0 - g).collect())
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Result<Self> {
        let grades = self.grades.iter().map(|&g| f(g)).collect();
        let mut out = Self::new(grades)?;
        out.universe = self.universe.clone();
        Ok(out)
    }

    pub fn apply_hedge(&self, hedge: &Hedge) -> Result<Self> {
        match hedge {
            Hedge::Identity => Ok(self.clone()),
            Hedge::Very => Ok(self.derive(self.grades.iter().map(|g| g * g).collect())),
            Hedge::MoreOrLess => Ok(self.derive(self.grades.iter().map(|g| g.sqrt()).collect())),
            Hedge::Not => Ok(self.complement()),
            Hedge::SlightlyTilted(tilt) => {
                let tilt = tilt.as_ref().ok_or(FuzzyError::TiltMissing)?;
                check_same_len(self, tilt)?;
                Ok(tilt.clone())
            }
        }
    }
}

impl AsRef<[f64]> for FuzzySetVector {
    fn as_ref(&self) -> &[f64] {
        &self.grades
    }
}

pub(crate) fn check_same_len(a: &FuzzySetVector, b: &FuzzySetVector) -> Result<()> {
    check_lengths(a.len(), b.len())
}

pub(crate) fn check_lengths(left: usize, right: usize) -> Result<()> {
    if left != right {
        return Err(FuzzyError::LengthMismatch { left, right });
    }
    Ok(())
}

/// Linguistic hedge applied to a fuzzy set.
///
/// `SlightlyTilted` carries the replacement vector explicitly: the tilt
/// is a user-supplied perturbation, not a formula.
#[derive(Debug, Clone, PartialEq)]
pub enum Hedge {
    Identity,
    /// Elementwise square.
    Very,
    /// Elementwise square root.
    MoreOrLess,
    /// Elementwise complement.
    Not,
    SlightlyTilted(Option<FuzzySetVector>),
}

pub fn apply_hedge(set: &FuzzySetVector, hedge: &Hedge) -> Result<FuzzySetVector> {
    set.apply_hedge(hedge)
}

pub fn complement(set: &FuzzySetVector) -> FuzzySetVector {
    set.complement()
}
