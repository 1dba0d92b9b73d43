use super::potentials::SuperpotentialSpec;
use crate::error::{Error, Result};
use serde::Serialize;

/// Closed-form spectrum of the `Â†Â` / `ÂÂ†` pair: `ε₋(n) = (n - A)² - A²`,
/// `ε₊(n) = ε₋(n + 1)`. `radius` is the tube radius `a` used for the
/// physical energies.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpectrumFormula {
    pub a_cot: f64,
    pub radius: f64,
    /// `false` when the parameters lie outside `A < -|B|`; the levels are then formal.
    pub normalizable: bool,
}

/// Eigenvalue and both physical-energy scalings for one level.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LevelEnergies {
    pub n: usize,
    pub eps: f64,
    /// `±sqrt(ε)/a²`
    pub e_eq37: f64,
    /// `±sqrt(ε)/a`
    pub e_eq89: f64,
}

impl SpectrumFormula {
    pub fn new(a_cot: f64, radius: f64, normalizable: bool) -> Self {
        Self {
            a_cot,
            radius,
            normalizable,
        }
    }

    pub fn for_spec(spec: &SuperpotentialSpec) -> Self {
        let radius = spec.geometry().map_or(1.0, |g| g.a);
        Self::new(spec.pt().a, radius, spec.normalizable())
    }

    pub fn eps_minus(&self, n: usize) -> Result<f64> {
        let nf = n as f64;
        let eps = nf * (nf - 2.0 * self.a_cot);
        if eps < 0.0 {
            return Err(Error::OutOfRange { n, eps });
        }
        Ok(eps)
    }

    pub fn eps_plus(&self, n: usize) -> Result<f64> {
        self.eps_minus(n + 1)
    }

    /// Positive-sign energies of level `n` of `H₋`.
    pub fn energies(&self, n: usize) -> Result<LevelEnergies> {
        let eps = self.eps_minus(n)?;
        let root = eps.sqrt();
        Ok(LevelEnergies {
            n,
            eps,
            e_eq37: root / (self.radius * self.radius),
            e_eq89: root / self.radius,
        })
    }
}

/// `ε₋(n)` for the given family.
pub fn analytic_spectrum(spec: &SuperpotentialSpec, n: usize) -> Result<f64> {
    SpectrumFormula::for_spec(spec).eps_minus(n)
}
