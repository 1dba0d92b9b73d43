//! Parameter sets under which the rational tail drops out of `V₋`.

use super::potentials::PtParams;
use crate::error::{Error, Result};
use crate::geometry::TorusGeometry;
use serde::Serialize;

/// Sign choice for the two-branch solutions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    Plus,
    Minus,
}

impl Branch {
    pub fn sign(self) -> f64 {
        match self {
            Branch::Plus => 1.0,
            Branch::Minus => -1.0,
        }
    }
}

/// Numerator `N₋` of the rational part of `V₋ = PT₋ + λ N₋ / (2R²)` for the
/// sin-tail superpotential.
pub fn rational_numerator_minus(pt: &PtParams, lambda: f64, geom: &TorusGeometry, x: f64) -> f64 {
    let (a, c) = (geom.a, geom.c);
    2.0 * a * (pt.a - 1.0)
        + 4.0 * pt.b * c
        + lambda
        + (4.0 * a * pt.b - 2.0 * c + 4.0 * pt.a * c) * x.cos()
        + (2.0 * a * pt.a - lambda) * (2.0 * x).cos()
}

/// Numerator `N₊` of the rational part of `V₊ = PT₊ + λ N₊ / (2R²)`.
pub fn rational_numerator_plus(pt: &PtParams, lambda: f64, geom: &TorusGeometry, x: f64) -> f64 {
    let (a, c) = (geom.a, geom.c);
    2.0 * a * (pt.a + 1.0)
        + 4.0 * pt.b * c
        + lambda
        + 2.0 * (2.0 * a * pt.b + c + 2.0 * pt.a * c) * x.cos()
        + (2.0 * a * pt.a - lambda) * (2.0 * x).cos()
}

/// Output of [`solve_equal_radii_conditions`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EqualRadiiSolution {
    pub pt: PtParams,
    pub lambda: f64,
    pub geom: TorusGeometry,
}

/// Given `a > 0`, `B` and a branch: `A = (1 ± 2B)/2`, `λ = 2aA`,
/// `c = 2aB/(1 - 2A)`, then checks `a = |c|`.
pub fn solve_equal_radii_conditions(a: f64, b: f64, branch: Branch) -> Result<EqualRadiiSolution> {
    if !(a > 0.0) {
        return Err(Error::InvalidParameter(format!("a must be > 0, got {a}")));
    }
    let big_a = 0.5 * (1.0 + branch.sign() * 2.0 * b);
    let lambda = 2.0 * a * big_a;
    let denom = 1.0 - 2.0 * big_a;
    if denom == 0.0 {
        return Err(Error::InconsistentConditions(
            "B = 0 leaves c = 2aB/(1 - 2A) undefined".into(),
        ));
    }
    let c = 2.0 * a * b / denom;
    if (a - c.abs()).abs() > 1e-12 * a {
        return Err(Error::InconsistentConditions(format!("a = {a} but |c| = {}", c.abs())));
    }
    Ok(EqualRadiiSolution {
        pt: PtParams::new(big_a, b),
        lambda,
        geom: TorusGeometry::new(a, c)?,
    })
}

/// Which form of the Appell-tail cancellation system to solve.
///
/// `Printed` keeps the constant `1` in `1 + 2a(A-1) + 4Bc + λ = 0`, which
/// produces the square-root ratio `r = sqrt((1 - 2a + 2λ)/(2λ - 2a))`.
/// `Corrected` drops it, which is what actually cancels the `V₋` numerator;
/// the solution is the same with `r = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AppellReading {
    Printed,
    Corrected,
}

/// Output of [`solve_appell_conditions`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AppellSolution {
    pub pt: PtParams,
    pub lambda: f64,
    pub geom: TorusGeometry,
    /// The ratio `r` in `c = ±a r`.
    pub ratio: f64,
}

/// `A = λ/(2a)`, `c = ±a r`, `B = ±(r/2)(1 - λ/a)`; the branch sign applies to both.
pub fn solve_appell_conditions(a: f64, lambda: f64, branch: Branch, reading: AppellReading) -> Result<AppellSolution> {
    if !(a > 0.0) {
        return Err(Error::InvalidParameter(format!("a must be > 0, got {a}")));
    }
    let ratio = match reading {
        AppellReading::Printed => {
            let num = 1.0 - 2.0 * a + 2.0 * lambda;
            let den = 2.0 * lambda - 2.0 * a;
            if !(num > 0.0 && den > 0.0) {
                return Err(Error::Domain(format!(
                    "radicands must be positive: 1 - 2a + 2 lambda = {num}, 2 lambda - 2a = {den}"
                )));
            }
            (num / den).sqrt()
        }
        AppellReading::Corrected => 1.0,
    };
    let s = branch.sign();
    let c = s * a * ratio;
    let b = s * 0.5 * ratio * (1.0 - lambda / a);
    Ok(AppellSolution {
        pt: PtParams::new(lambda / (2.0 * a), b),
        lambda,
        geom: TorusGeometry::new(a, c)?,
        ratio,
    })
}

/// The functional whose vanishing makes `G` cancel from `V₋` in the Appell tail:
/// `2G² + G[(4aB + 4Ac) cot x + 4aA cos x cot x + 4Bc csc x + (4λ - 2a) sin x] - 2RG'`.
pub fn appell_functional(pt: &PtParams, lambda: f64, geom: &TorusGeometry, g: f64, g_prime: f64, x: f64) -> f64 {
    let (a, c) = (geom.a, geom.c);
    let (s, co) = x.sin_cos();
    let cot = co / s;
    let bracket = (4.0 * a * pt.b + 4.0 * pt.a * c) * cot
        + 4.0 * a * pt.a * co * cot
        + 4.0 * pt.b * c / s
        + (4.0 * lambda - 2.0 * a) * s;
    2.0 * g * g + g * bracket - 2.0 * geom.radius(x) * g_prime
}

#[cfg(test)]
mod tests {
    use super::*;

    fn max_numerator(sol: &EqualRadiiSolution) -> f64 {
        (1..200)
            .map(|i| 0.0157 * i as f64)
            .map(|x| rational_numerator_minus(&sol.pt, sol.lambda, &sol.geom, x).abs())
            .fold(0.0, f64::max)
    }

    #[test]
    fn equal_radii_minus_branch() {
        let s = solve_equal_radii_conditions(2.0, -1.5, Branch::Minus).unwrap();
        assert_eq!((s.pt.a, s.lambda, s.geom.c), (2.0, 8.0, 2.0));
        assert!(max_numerator(&s) < 1e-12);
    }

    #[test]
    fn equal_radii_plus_branch() {
        let s = solve_equal_radii_conditions(1.0, 0.5, Branch::Plus).unwrap();
        assert_eq!((s.pt.a, s.lambda, s.geom.c), (1.0, 2.0, -1.0));
        assert!(max_numerator(&s) < 1e-12);
    }

    #[test]
    fn equal_radii_b_zero_is_inconsistent() {
        assert!(matches!(
            solve_equal_radii_conditions(1.0, 0.0, Branch::Plus),
            Err(Error::InconsistentConditions(_))
        ));
    }

    #[test]
    fn appell_printed_example() {
        let s = solve_appell_conditions(1.0, 2.0, Branch::Plus, AppellReading::Printed).unwrap();
        let r = 1.5_f64.sqrt();
        assert_eq!(s.pt.a, 1.0);
        assert!((s.geom.c - r).abs() < 1e-15);
        assert!((s.pt.b + 0.5 * r).abs() < 1e-15);
        // the stray constant survives: N₋ = -1 everywhere
        for x in [0.3, 1.1, 2.4] {
            let n = rational_numerator_minus(&s.pt, s.lambda, &s.geom, x);
            assert!((n + 1.0).abs() < 1e-12, "{n}");
        }
    }

    #[test]
    fn appell_corrected_cancels() {
        for branch in [Branch::Plus, Branch::Minus] {
            let s = solve_appell_conditions(1.0, 2.0, branch, AppellReading::Corrected).unwrap();
            for x in [0.3, 1.1, 2.4] {
                let n = rational_numerator_minus(&s.pt, s.lambda, &s.geom, x);
                assert!(n.abs() < 1e-12, "{n}");
            }
        }
    }

    #[test]
    fn appell_radicand_domain() {
        assert!(matches!(
            solve_appell_conditions(1.0, 0.5, Branch::Plus, AppellReading::Printed),
            Err(Error::Domain(_))
        ));
    }
}
