//! Distance and similarity measures between discrete fuzzy sets.

use std::fmt;

use crate::error::{FuzzyError, Result};
use crate::logic::Implication;
use crate::set::{check_same_len, FuzzySetVector};

/// Root-mean-square distance between two grade slices of equal length.
pub fn rms_distance(p: &[f64], q: &[f64]) -> Result<f64> {
    crate::set::check_lengths(p.len(), q.len())?;
    if p.is_empty() {
        return Ok(0.0);
    }
    let sum: f64 = p.iter().zip(q).map(|(a, b)| (a - b) * (a - b)).sum();
    Ok((sum / p.len() as f64).sqrt())
}

/// Normalized Euclidean distance `sqrt(mean((p - q)^2))`.
pub fn dm_distance(p: &FuzzySetVector, q: &FuzzySetVector) -> Result<f64> {
    rms_distance(p.grades(), q.grades())
}

/// Similarity derived from the distance: `1 / (1 + dm)`.
pub fn sm_from_dm(p: &FuzzySetVector, q: &FuzzySetVector) -> Result<f64> {
    Ok(1.0 / (1.0 + dm_distance(p, q)?))
}

/// The nine classic similarity measures, identified by catalogue number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SimilarityMeasure {
    /// `1 - Σ|a-b| / Σ(a+b)`
    RelativeDifference = 17,
    /// `mean(1 - |a-b|)`
    MeanComplementDifference = 18,
    /// `1 - max|a-b|`
    MaxDifference = 19,
    /// `Σab / max(Σa², Σb²)`
    ProductOverMaxEnergy = 20,
    /// `Σmin / Σmax`
    MinOverMax = 21,
    /// `mean(min / max)`
    MeanMinOverMax = 22,
    /// `max(min(a, b))` — an overlap degree rather than a similarity.
    MaxOfMin = 23,
    /// Mean two-sided biimplication, built on the Gödel implication.
    Biimplication = 24,
    /// Cosine over membership and non-membership `ν = 1 - μ`.
    IntuitionisticCosine = 25,
}

impl SimilarityMeasure {
    pub const ALL: [SimilarityMeasure; 9] = [
        SimilarityMeasure::RelativeDifference,
        SimilarityMeasure::MeanComplementDifference,
        SimilarityMeasure::MaxDifference,
        SimilarityMeasure::ProductOverMaxEnergy,
        SimilarityMeasure::MinOverMax,
        SimilarityMeasure::MeanMinOverMax,
        SimilarityMeasure::MaxOfMin,
        SimilarityMeasure::Biimplication,
        SimilarityMeasure::IntuitionisticCosine,
    ];

    pub fn id(self) -> u8 {
        self as u8
    }

    pub fn from_id(id: u8) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|m| m.id() == id)
            .ok_or_else(|| FuzzyError::InvalidParameter(format!("no similarity measure {id}")))
    }

    pub fn evaluate(self, p: &FuzzySetVector, q: &FuzzySetVector) -> Result<f64> {
        check_same_len(p, q)?;
        let (a, b) = (p.grades(), q.grades());
        let n = a.len() as f64;
        let pairs = || a.iter().copied().zip(b.iter().copied());
        let value = match self {
            SimilarityMeasure::RelativeDifference => {
                let diff: f64 = pairs().map(|(x, y)| (x - y).abs()).sum();
                let total: f64 = pairs().map(|(x, y)| x + y).sum();
                if total == 0.0 {
                    1.0
                } else {
                    1.0 - (diff / total).min(1.0)
                }
            }
            SimilarityMeasure::MeanComplementDifference => {
                pairs().map(|(x, y)| 1.0 - (x - y).abs()).sum::<f64>() / n
            }
            SimilarityMeasure::MaxDifference => {
                1.0 - pairs().map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
            }
            SimilarityMeasure::ProductOverMaxEnergy => {
                let dot: f64 = pairs().map(|(x, y)| x * y).sum();
                let ea: f64 = a.iter().map(|x| x * x).sum();
                let eb: f64 = b.iter().map(|y| y * y).sum();
                ratio_or_one(dot, ea.max(eb))
            }
            SimilarityMeasure::MinOverMax => {
                let lo: f64 = pairs().map(|(x, y)| x.min(y)).sum();
                let hi: f64 = pairs().map(|(x, y)| x.max(y)).sum();
                ratio_or_one(lo, hi)
            }
            SimilarityMeasure::MeanMinOverMax => {
                pairs().map(|(x, y)| ratio_or_one(x.min(y), x.max(y))).sum::<f64>() / n
            }
            SimilarityMeasure::MaxOfMin => pairs().map(|(x, y)| x.min(y)).fold(0.0, f64::max),
            SimilarityMeasure::Biimplication => {
                let imp = Implication::Godel;
                let bi = |x: f64, y: f64| imp.apply(x, y).min(imp.apply(y, x));
                pairs()
                    .map(|(x, y)| 0.5 * (bi(x, y) + bi(1.0 - x, 1.0 - y)))
                    .sum::<f64>()
                    / n
            }
            SimilarityMeasure::IntuitionisticCosine => {
                let dot: f64 = pairs().map(|(x, y)| x * y + (1.0 - x) * (1.0 - y)).sum();
                let na: f64 = a.iter().map(|x| x * x + (1.0 - x) * (1.0 - x)).sum();
                let nb: f64 = b.iter().map(|y| y * y + (1.0 - y) * (1.0 - y)).sum();
                // na, nb >= n/2 > 0
                (dot / (na * nb).sqrt()).min(1.0)
            }
        };
        Ok(value.clamp(0.0, 1.0))
    }
}

impl fmt::Display for SimilarityMeasure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "sm{}", self.id())
    }
}

/// `num / den`, with the convention that `0 / 0` is perfect agreement.
fn ratio_or_one(num: f64, den: f64) -> f64 {
    if den == 0.0 {
        1.0
    } else {
        num / den
    }
}

pub fn similarity(measure_id: u8, p: &FuzzySetVector, q: &FuzzySetVector) -> Result<f64> {
    SimilarityMeasure::from_id(measure_id)?.evaluate(p, q)
}
