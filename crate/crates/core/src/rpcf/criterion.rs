use serde::{Deserialize, Serialize};

use crate::error::{FuzzyError, Result};
use crate::lcm::CaseTag;
use crate::set::{check_same_len, FuzzySetVector, Hedge};

/// Reductive-property score: `(1 − mean|result − target|) × 100`.
pub fn rpcf(result: &FuzzySetVector, target: &FuzzySetVector) -> Result<f64> {
    check_same_len(result, target)?;
    let total: f64 = result
        .grades()
        .iter()
        .zip(target.grades())
        .map(|(r, t)| (r - t).abs())
        .sum();
    Ok((1.0 - total / result.len() as f64) * 100.0)
}

/// Premise and expected result for a tilted case.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaseTilt {
    pub premise: FuzzySetVector,
    pub target: FuzzySetVector,
}

/// The premise a case feeds to the rule `A → B`.
///
/// Forward: A, A², A^½, 1−A, tilt. Backward: 1−B, 1−B², 1−B^½, B, tilt.
pub fn premise_for(
    case: CaseTag,
    a: &FuzzySetVector,
    b: &FuzzySetVector,
    tilt: Option<&CaseTilt>,
) -> Result<FuzzySetVector> {
    hedged(case, a, b, tilt.map(|t| &t.premise))
}

/// The result a reductive method should return for `case`.
///
/// Forward: B, B², B^½, 1−B, tilt. Backward: 1−A, 1−A², 1−A^½, A, tilt.
pub fn expected_target(
    case: CaseTag,
    a: &FuzzySetVector,
    b: &FuzzySetVector,
    tilt: Option<&CaseTilt>,
) -> Result<FuzzySetVector> {
    // the backward targets mirror the forward premises with A and B swapped
    let (a, b) = (b, a);
    hedged(case, a, b, tilt.map(|t| &t.target))
}

fn hedged(
    case: CaseTag,
    forward_source: &FuzzySetVector,
    backward_source: &FuzzySetVector,
    tilt: Option<&FuzzySetVector>,
) -> Result<FuzzySetVector> {
    let tilted = |src: &FuzzySetVector| {
        let t = tilt.ok_or(FuzzyError::TiltMissing)?;
        src.apply_hedge(&Hedge::SlightlyTilted(Some(t.clone())))
    };
    let not = |s: Result<FuzzySetVector>| s.map(|s| s.complement());
    let (a, b) = (forward_source, backward_source);
    match case {
        CaseTag::Case1 => Ok(a.clone()),
        CaseTag::Case2 => a.apply_hedge(&Hedge::Very),
        CaseTag::Case3 => a.apply_hedge(&Hedge::MoreOrLess),
        CaseTag::Case4 => Ok(a.complement()),
        CaseTag::Case5 => tilted(a),
        CaseTag::Case6 => Ok(b.complement()),
        CaseTag::Case7 => not(b.apply_hedge(&Hedge::Very)),
        CaseTag::Case8 => not(b.apply_hedge(&Hedge::MoreOrLess)),
        CaseTag::Case9 => Ok(b.clone()),
        CaseTag::Case10 => tilted(b),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn set(g: &[f64]) -> FuzzySetVector {
        FuzzySetVector::new(g.to_vec()).unwrap()
    }

    #[test]
    fn score_examples() {
        let b = set(&[0.0, 0.2, 1.0]);
        assert_eq!(rpcf(&b, &b).unwrap(), 100.0);
        let r = set(&[0.072, 0.0, 0.0, 0.0, 0.072, 0.35, 1.0]);
        let t = set(&[0.0, 0.0, 0.0, 0.0, 0.0, 0.09, 1.0]);
        // 1 − 0.404 / 7
        assert!((rpcf(&r, &t).unwrap() - 94.2286).abs() < 1e-3);
        let r = set(&[0.0, 0.087, 0.337, 0.587, 1.0]);
        let t = set(&[0.0, 0.0625, 0.25, 0.5625, 1.0]);
        assert!((rpcf(&r, &t).unwrap() - 97.28).abs() < 5e-3);
        assert!(rpcf(&r, &b).is_err());
    }

    #[test]
    fn targets() {
        let a = set(&[1.0, 0.3, 0.0, 0.0, 0.0]);
        let b = set(&[0.0, 0.0, 0.0, 0.0, 0.0, 0.3, 1.0]);
        assert_eq!(expected_target(CaseTag::Case1, &a, &b, None).unwrap(), b);
        let t2 = expected_target(CaseTag::Case2, &a, &b, None).unwrap();
        assert!((t2.grades()[5] - 0.09).abs() < 1e-12);
        let t7 = expected_target(CaseTag::Case7, &a, &b, None).unwrap();
        let want = [0.0, 0.91, 1.0, 1.0, 1.0];
        for (g, w) in t7.grades().iter().zip(want) {
            assert!((g - w).abs() < 1e-12);
        }
        assert_eq!(expected_target(CaseTag::Case9, &a, &b, None).unwrap(), a);
        assert_eq!(
            expected_target(CaseTag::Case5, &a, &b, None),
            Err(FuzzyError::TiltMissing)
        );
    }

    #[test]
    fn premises() {
        let a = set(&[1.0, 0.3, 0.0, 0.0, 0.0]);
        let b = set(&[0.0, 0.0, 0.0, 0.0, 0.0, 0.3, 1.0]);
        let p4 = premise_for(CaseTag::Case4, &a, &b, None).unwrap();
        assert_eq!(p4.grades(), &[0.0, 0.7, 1.0, 1.0, 1.0]);
        let p7 = premise_for(CaseTag::Case7, &a, &b, None).unwrap();
        assert!((p7.grades()[5] - 0.91).abs() < 1e-12);
        let tilt = CaseTilt {
            premise: set(&[1.0, 0.2, 0.0, 0.0, 0.0]),
            target: set(&[0.0, 0.0, 0.0, 0.0, 0.0, 0.2, 1.0]),
        };
        assert_eq!(
            premise_for(CaseTag::Case5, &a, &b, Some(&tilt)).unwrap(),
            tilt.premise
        );
        assert_eq!(
            expected_target(CaseTag::Case5, &a, &b, Some(&tilt)).unwrap(),
            tilt.target
        );
    }

    proptest! {
        #[test]
        fn score_is_100_only_for_equal_vectors(
            (r, t) in (2usize..10).prop_flat_map(|n| (
                prop::collection::vec(0.0f64..=1.0, n),
                prop::collection::vec(0.0f64..=1.0, n),
            ))
        ) {
            let s = rpcf(&set(&r), &set(&t)).unwrap();
            prop_assert!((0.0..=100.0).contains(&s));
            if r == t {
                prop_assert_eq!(s, 100.0);
            } else {
                prop_assert!(s < 100.0);
            }
        }

        #[test]
        fn score_ignores_joint_permutation(
            (r, t, seed) in (2usize..10).prop_flat_map(|n| (
                prop::collection::vec(0.0f64..=1.0, n),
                prop::collection::vec(0.0f64..=1.0, n),
                any::<u64>(),
            ))
        ) {
            use rand::seq::SliceRandom;
            use rand::SeedableRng;
            let mut idx: Vec<usize> = (0..r.len()).collect();
            idx.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
            let rp: Vec<f64> = idx.iter().map(|&i| r[i]).collect();
            let tp: Vec<f64> = idx.iter().map(|&i| t[i]).collect();
            let s1 = rpcf(&set(&r), &set(&t)).unwrap();
            let s2 = rpcf(&set(&rp), &set(&tp)).unwrap();
            prop_assert!((s1 - s2).abs() < 1e-9);
        }
    }
}
