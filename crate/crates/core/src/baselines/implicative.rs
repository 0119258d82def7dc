//! Implication-based inference: compositional rule, triple and quintuple
//! implication principles.

use crate::error::Result;
use crate::logic::{Implication, TNorm};
use crate::set::{check_same_len, FuzzySetVector};

fn sup(values: impl Iterator<Item = f64>) -> f64 {
    values.fold(0.0, f64::max)
}

fn inf(values: impl Iterator<Item = f64>) -> f64 {
    values.fold(1.0, f64::min)
}

/// `B*_j = max_i t(A*_i, A_i → B_j)`.
pub fn cri_fmp(
    a: &FuzzySetVector,
    a_star: &FuzzySetVector,
    b: &FuzzySetVector,
    imp: Implication,
    t: TNorm,
) -> Result<FuzzySetVector> {
    check_same_len(a, a_star)?;
    let out = b
        .grades()
        .iter()
        .map(|&bj| {
            sup(a
                .grades()
                .iter()
                .zip(a_star.grades())
                .map(|(&ai, &si)| t.apply(si, imp.apply(ai, bj))))
        })
        .collect();
    FuzzySetVector::new(out)
}

/// `A*_i = max_j t(B*_j, A_i → B_j)`.
pub fn cri_fmt(
    a: &FuzzySetVector,
    b: &FuzzySetVector,
    b_star: &FuzzySetVector,
    imp: Implication,
    t: TNorm,
) -> Result<FuzzySetVector> {
    check_same_len(b, b_star)?;
    let out = a
        .grades()
        .iter()
        .map(|&ai| {
            sup(b
                .grades()
                .iter()
                .zip(b_star.grades())
                .map(|(&bj, &sj)| t.apply(sj, imp.apply(ai, bj))))
        })
        .collect();
    FuzzySetVector::new(out)
}

/// Triple-implication forward solution: the sup-composition with the
/// t-norm adjoint to `imp`.
pub fn tip_fmp(
    a: &FuzzySetVector,
    a_star: &FuzzySetVector,
    b: &FuzzySetVector,
    imp: Implication,
) -> Result<FuzzySetVector> {
    cri_fmp(a, a_star, b, imp, imp.adjoint_tnorm())
}

/// `A*_i = min_j ((A_i → B_j) → B*_j)`.
pub fn tip_fmt(
    a: &FuzzySetVector,
    b: &FuzzySetVector,
    b_star: &FuzzySetVector,
    imp: Implication,
) -> Result<FuzzySetVector> {
    check_same_len(b, b_star)?;
    let out = a
        .grades()
        .iter()
        .map(|&ai| {
            inf(b
                .grades()
                .iter()
                .zip(b_star.grades())
                .map(|(&bj, &sj)| imp.apply(imp.apply(ai, bj), sj)))
        })
        .collect();
    FuzzySetVector::new(out)
}

/// `B*_j = max_i A*_i ⊗ (A*_i → A_i) ⊗ (A_i → B_j)`.
pub fn qip_fmp(
    a: &FuzzySetVector,
    a_star: &FuzzySetVector,
    b: &FuzzySetVector,
    imp: Implication,
) -> Result<FuzzySetVector> {
    check_same_len(a, a_star)?;
    let t = imp.adjoint_tnorm();
    let out = b
        .grades()
        .iter()
        .map(|&bj| {
            sup(a.grades().iter().zip(a_star.grades()).map(|(&ai, &si)| {
                t.apply(t.apply(si, imp.apply(si, ai)), imp.apply(ai, bj))
            }))
        })
        .collect();
    FuzzySetVector::new(out)
}

/// `A*_i = max_j A_i ⊗ (A_i → B_j) ⊗ (B_j → B*_j)`.
pub fn qip_fmt(
    a: &FuzzySetVector,
    b: &FuzzySetVector,
    b_star: &FuzzySetVector,
    imp: Implication,
) -> Result<FuzzySetVector> {
    check_same_len(b, b_star)?;
    let t = imp.adjoint_tnorm();
    let out = a
        .grades()
        .iter()
        .map(|&ai| {
            sup(b.grades().iter().zip(b_star.grades()).map(|(&bj, &sj)| {
                t.apply(t.apply(ai, imp.apply(ai, bj)), imp.apply(bj, sj))
            }))
        })
        .collect();
    FuzzySetVector::new(out)
}
