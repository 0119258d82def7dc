use crate::error::{FuzzyError, Result};
use crate::set::FuzzySetVector;

/// Largest extension length accepted by [`lcm_extend`].
pub const MAX_THETA: usize = 1_000_000;

pub fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Least common multiple of two positive lengths.
pub fn lcm(u: usize, v: usize) -> Result<usize> {
    if u == 0 || v == 0 {
        return Err(FuzzyError::InvalidParameter("lcm of a zero length".into()));
    }
    let theta = (u / gcd(u, v))
        .checked_mul(v)
        .ok_or(FuzzyError::ThetaTooLarge(usize::MAX))?;
    if theta > MAX_THETA {
        return Err(FuzzyError::ThetaTooLarge(theta));
    }
    Ok(theta)
}

/// A fuzzy vector resampled onto a grid of `theta` points.
///
/// Original grade `k` (1-based) sits at 1-based position `k * stride`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtendedVector {
    values: Vec<f64>,
    stride: usize,
}

impl ExtendedVector {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn theta(&self) -> usize {
        self.values.len()
    }

    pub fn stride(&self) -> usize {
        self.stride
    }

    /// Number of grades in the vector this was extended from.
    pub fn original_len(&self) -> usize {
        self.values.len() / self.stride
    }

    pub fn complement(&self) -> Self {
        Self {
            values: self.values.iter().map(|x| 1.0 - x).collect(),
            stride: self.stride,
        }
    }

    /// The grades at the anchor positions, i.e. the original vector.
    pub fn anchors(&self) -> Vec<f64> {
        select_anchors(&self.values, self.stride)
    }
}

/// Extends `set` to length `theta`.
///
/// Anchors hold the original grades; positions between two anchors are
/// linearly interpolated, and positions before the first anchor repeat
/// the first grade.
pub fn lcm_extend(set: &FuzzySetVector, theta: usize) -> Result<ExtendedVector> {
    extend_grades(set.grades(), theta)
}

pub(crate) fn extend_grades(grades: &[f64], theta: usize) -> Result<ExtendedVector> {
    let n = grades.len();
    if n == 0 || theta == 0 || !theta.is_multiple_of(n) {
        return Err(FuzzyError::ThetaNotMultiple { theta, len: n });
    }
    if theta > MAX_THETA {
        return Err(FuzzyError::ThetaTooLarge(theta));
    }
    let m = theta / n;
    let mut values = Vec::with_capacity(theta);
    values.extend(std::iter::repeat_n(grades[0], m - 1));
    values.push(grades[0]);
    for pair in grades.windows(2) {
        let (lo, hi) = (pair[0], pair[1]);
        for step in 1..m {
            values.push(lo + (hi - lo) * step as f64 / m as f64);
        }
        values.push(hi);
    }
    Ok(ExtendedVector { values, stride: m })
}

/// Picks every `stride`-th value, starting at 1-based position `stride`.
pub fn select_anchors(values: &[f64], stride: usize) -> Vec<f64> {
    values.iter().skip(stride - 1).step_by(stride).copied().collect()
}
