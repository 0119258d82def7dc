use std::fmt;
use std::str::FromStr;

use crate::error::{FuzzyError, Result};
use crate::logic::Implication;
use crate::set::{check_lengths, FuzzySetVector};

/// Fuzzy relation built pointwise from a rule `A → B`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RelationKind {
    /// `a · b`
    Rp,
    /// `min(1, 1 − a + b)`
    Ra,
    /// `min(a, b)`
    Rc,
    /// `max(min(a, b), 1 − a)`
    Rm,
    /// Sharp-s implication.
    Rs,
    /// Sharp-g implication.
    Rg,
    Rss,
    Rsg,
    Rgs,
    Rgg,
}

impl RelationKind {
    pub const ALL: [RelationKind; 10] = [
        RelationKind::Rp,
        RelationKind::Ra,
        RelationKind::Rc,
        RelationKind::Rm,
        RelationKind::Rs,
        RelationKind::Rg,
        RelationKind::Rss,
        RelationKind::Rsg,
        RelationKind::Rgs,
        RelationKind::Rgg,
    ];

    pub fn entry(self, a: f64, b: f64) -> f64 {
        let s = Implication::SharpS;
        let g = Implication::SharpG;
        // forward implication on (a, b), backward on the complements
        let pair = |fwd: Implication, bwd: Implication| {
            fwd.apply(a, b).min(bwd.apply(1.0 - a, 1.0 - b))
        };
        match self {
            RelationKind::Rp => a * b,
            RelationKind::Ra => (1.0 - a + b).min(1.0),
            RelationKind::Rc => a.min(b),
            RelationKind::Rm => a.min(b).max(1.0 - a),
            RelationKind::Rs => s.apply(a, b),
            RelationKind::Rg => g.apply(a, b),
            RelationKind::Rss => pair(s, s),
            RelationKind::Rsg => pair(s, g),
            RelationKind::Rgs => pair(g, s),
            RelationKind::Rgg => pair(g, g),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            RelationKind::Rp => "rp",
            RelationKind::Ra => "ra",
            RelationKind::Rc => "rc",
            RelationKind::Rm => "rm",
            RelationKind::Rs => "rs",
            RelationKind::Rg => "rg",
            RelationKind::Rss => "rss",
            RelationKind::Rsg => "rsg",
            RelationKind::Rgs => "rgs",
            RelationKind::Rgg => "rgg",
        }
    }
}

impl fmt::Display for RelationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RelationKind {
    type Err = FuzzyError;

    fn from_str(s: &str) -> Result<Self> {
        RelationKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| FuzzyError::UnknownMethod(format!("rel:{s}")))
    }
}

/// Row-major `rows × cols` grid of grades; row `i` belongs to `A`, column
/// `j` to `B`.
#[derive(Debug, Clone, PartialEq)]
pub struct RelationMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<f64>,
}

impl RelationMatrix {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    /// Sup–min composition of a premise over the rows: `max_i min(p_i, R_ij)`.
    pub fn compose_forward(&self, premise: &FuzzySetVector) -> Result<FuzzySetVector> {
        check_lengths(premise.len(), self.rows)?;
        let out = (0..self.cols)
            .map(|j| {
                premise
                    .grades()
                    .iter()
                    .enumerate()
                    .map(|(i, &p)| p.min(self.get(i, j)))
                    .fold(0.0, f64::max)
            })
            .collect();
        FuzzySetVector::new(out)
    }

    /// Sup–min composition over the columns: `max_j min(p_j, R_ij)`.
    pub fn compose_backward(&self, premise: &FuzzySetVector) -> Result<FuzzySetVector> {
        check_lengths(premise.len(), self.cols)?;
        let out = (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(premise.grades())
                    .map(|(&r, &p)| p.min(r))
                    .fold(0.0, f64::max)
            })
            .collect();
        FuzzySetVector::new(out)
    }
}

pub fn build_relation(kind: RelationKind, a: &FuzzySetVector, b: &FuzzySetVector) -> RelationMatrix {
    let entries = a
        .grades()
        .iter()
        .flat_map(|&x| b.grades().iter().map(move |&y| kind.entry(x, y)))
        .collect();
    RelationMatrix {
        rows: a.len(),
        cols: b.len(),
        entries,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(g: &[f64]) -> FuzzySetVector {
        FuzzySetVector::new(g.to_vec()).unwrap()
    }

    #[test]
    fn min_relation_example() {
        let r = build_relation(RelationKind::Rc, &set(&[1.0, 0.0]), &set(&[0.3, 1.0]));
        assert_eq!(r.row(0), &[0.3, 1.0]);
        assert_eq!(r.row(1), &[0.0, 0.0]);
    }

    #[test]
    fn scalar_entries() {
        assert_eq!(RelationKind::Rs.entry(0.5, 0.5), 1.0);
        assert!((RelationKind::Rm.entry(0.2, 0.9) - 0.8).abs() < 1e-12);
    }

    #[test]
    fn max_relation_against_set_formula_on_grid() {
        // (A × B) ∪ ((1 − A) × V) with V the whole output universe
        for i in 0..=10 {
            for j in 0..=10 {
                let (a, b) = (i as f64 / 10.0, j as f64 / 10.0);
                let union = f64::max(a.min(b), (1.0 - a).min(1.0));
                assert_eq!(RelationKind::Rm.entry(a, b), union);
            }
        }
    }

    #[test]
    fn combinations_pair_both_directions() {
        // a <= b but 1-a > 1-b: forward holds, backward fails
        assert_eq!(RelationKind::Rss.entry(0.2, 0.6), 0.0);
        assert_eq!(RelationKind::Rsg.entry(0.2, 0.6), 0.4);
        assert_eq!(RelationKind::Rgs.entry(0.2, 0.6), 0.0);
        assert_eq!(RelationKind::Rgg.entry(0.6, 0.2), 0.2);
        for k in [RelationKind::Rss, RelationKind::Rsg, RelationKind::Rgs, RelationKind::Rgg] {
            assert_eq!(k.entry(0.4, 0.4), 1.0);
        }
    }

    #[test]
    fn entries_in_unit_interval() {
        for k in RelationKind::ALL {
            for i in 0..=20 {
                for j in 0..=20 {
                    let v = k.entry(i as f64 / 20.0, j as f64 / 20.0);
                    assert!((0.0..=1.0).contains(&v), "{k}");
                }
            }
        }
    }

    #[test]
    fn composition_directions() {
        let a = set(&[0.0, 0.5, 1.0]);
        let b = set(&[0.2, 1.0]);
        let r = build_relation(RelationKind::Rc, &a, &b);
        assert_eq!(r.compose_forward(&a).unwrap().grades(), &[0.2, 1.0]);
        assert_eq!(r.compose_backward(&b).unwrap().grades(), &[0.0, 0.5, 1.0]);
        assert!(r.compose_forward(&b).is_err());
    }

    #[test]
    fn names_round_trip() {
        for k in RelationKind::ALL {
            assert_eq!(k.name().parse::<RelationKind>().unwrap(), k);
        }
    }
}
