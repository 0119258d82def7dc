//! Scalar fuzzy logic: implications and t-norms.

use std::fmt;
use std::str::FromStr;

use crate::error::FuzzyError;

/// Fuzzy implication operator.
///
/// Every kind equals 1 whenever `a <= b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Implication {
    Godel,
    Goguen,
    Lukasiewicz,
    R0,
    /// Crisp threshold: 1 if `a <= b`, else 0.
    SharpS,
    /// 1 if `a <= b`, else `b`.
    SharpG,
}

impl Implication {
    pub const ALL: [Implication; 6] = [
        Implication::Godel,
        Implication::Goguen,
        Implication::Lukasiewicz,
        Implication::R0,
        Implication::SharpS,
        Implication::SharpG,
    ];

    pub fn apply(self, a: f64, b: f64) -> f64 {
        if a <= b {
            return 1.0;
        }
        match self {
            Implication::Godel | Implication::SharpG => b,
            // a > b >= 0 here
            Implication::Goguen => b / a,
            Implication::Lukasiewicz => (1.0 - a + b).min(1.0),
            Implication::R0 => (1.0 - a).max(b),
            Implication::SharpS => 0.0,
        }
    }

    /// The t-norm whose residuum this implication is. The sharp-s
    /// implication is not a residuum; it is paired with `min`.
    pub fn adjoint_tnorm(self) -> TNorm {
        match self {
            Implication::Godel | Implication::SharpG | Implication::SharpS => TNorm::Min,
            Implication::Goguen => TNorm::Product,
            Implication::Lukasiewicz => TNorm::Lukasiewicz,
            Implication::R0 => TNorm::R0Conjunction,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Implication::Godel => "godel",
            Implication::Goguen => "goguen",
            Implication::Lukasiewicz => "lukasiewicz",
            Implication::R0 => "r0",
            Implication::SharpS => "sharp-s",
            Implication::SharpG => "sharp-g",
        }
    }
}

impl fmt::Display for Implication {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Implication {
    type Err = FuzzyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Implication::ALL
            .into_iter()
            .find(|i| i.name() == s)
            .ok_or_else(|| FuzzyError::UnknownMethod(s.to_string()))
    }
}

pub fn implication_value(imp: Implication, a: f64, b: f64) -> f64 {
    imp.apply(a, b)
}

/// Left-continuous t-norm.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TNorm {
    Min,
    Product,
    Lukasiewicz,
    /// Nilpotent minimum, the conjunction adjoint to R0.
    R0Conjunction,
}

impl TNorm {
    pub fn apply(self, a: f64, b: f64) -> f64 {
        match self {
            TNorm::Min => a.min(b),
            TNorm::Product => a * b,
            TNorm::Lukasiewicz => (a + b - 1.0).max(0.0),
            TNorm::R0Conjunction => {
                if a + b > 1.0 {
                    a.min(b)
                } else {
                    0.0
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid() -> Vec<f64> {
        (0..=100).map(|i| i as f64 / 100.0).collect()
    }

    #[test]
    fn scalar_examples() {
        assert!((Implication::Lukasiewicz.apply(0.8, 0.5) - 0.7).abs() < 1e-12);
        assert_eq!(Implication::SharpS.apply(0.3, 0.3), 1.0);
        assert_eq!(Implication::SharpS.apply(0.31, 0.3), 0.0);
        assert!((Implication::Goguen.apply(0.5, 0.25) - 0.5).abs() < 1e-12);
        assert_eq!(Implication::SharpG.apply(0.6, 0.2), 0.2);
        assert_eq!(Implication::R0.apply(0.6, 0.2), 0.4);
    }

    /// Residuum by brute force: sup { z on the grid : t(a, z) <= b }.
    fn brute_residuum(t: TNorm, a: f64, b: f64) -> f64 {
        grid()
            .into_iter()
            .filter(|&z| t.apply(a, z) <= b + 1e-12)
            .fold(0.0, f64::max)
    }

    #[test]
    fn residua_match_brute_force_on_grid() {
        // Goguen(0.5, 0.25) = 0.5 is the frozen example; check the whole grid
        // to within the grid resolution.
        for imp in [
            Implication::Godel,
            Implication::Goguen,
            Implication::Lukasiewicz,
            Implication::R0,
        ] {
            let t = imp.adjoint_tnorm();
            for &a in &grid()[..] {
                for &b in grid().iter().step_by(7) {
                    let brute = brute_residuum(t, a, b);
                    let exact = imp.apply(a, b);
                    assert!(
                        exact >= brute - 1e-9 && exact - brute <= 0.01 + 1e-9,
                        "{imp} a={a} b={b}: {exact} vs {brute}"
                    );
                }
            }
        }
        assert_eq!(brute_residuum(TNorm::Product, 0.5, 0.25), 0.5);
    }

    #[test]
    fn implications_stay_in_unit_interval_and_residuate() {
        for imp in Implication::ALL {
            for &a in &grid() {
                for &b in &grid() {
                    let v = imp.apply(a, b);
                    assert!((0.0..=1.0).contains(&v), "{imp} {a} {b}");
                    if a <= b {
                        assert_eq!(v, 1.0);
                    }
                }
            }
        }
    }

    #[test]
    fn tnorm_axioms_on_grid() {
        let g: Vec<f64> = grid().into_iter().step_by(5).collect();
        for t in [
            TNorm::Min,
            TNorm::Product,
            TNorm::Lukasiewicz,
            TNorm::R0Conjunction,
        ] {
            for &a in &g {
                assert!((t.apply(a, 1.0) - a).abs() < 1e-12);
                for &b in &g {
                    let v = t.apply(a, b);
                    assert!((0.0..=1.0).contains(&v));
                    assert_eq!(v, t.apply(b, a));
                    for &c in &g {
                        if b <= c {
                            assert!(t.apply(a, b) <= t.apply(a, c) + 1e-12);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn parses_names() {
        for imp in Implication::ALL {
            assert_eq!(imp.name().parse::<Implication>().unwrap(), imp);
        }
        assert!("zadeh".parse::<Implication>().is_err());
    }
}
