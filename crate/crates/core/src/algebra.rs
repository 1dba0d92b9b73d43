//! Modified `iso(2,1)` realization on `ψ_μ(x) e^{iμφ}` sectors.
//!
//! `J₃` acts as the scalar `μ` on sector `μ`; `J±` map sector `μ` to `μ ± 1`
//! and are first-order differential operators in `x` built from
//! `S = -cot x`, `T = B₁ csc x` and the rational modifications
//! `U₁ = -K₁ sin x / R`, `U₂ = K₂ sin x / R`.

use crate::error::{Error, Result};
use crate::geometry::TorusGeometry;
use crate::oracle::Grid1D;
use crate::susy::{partner_potentials, PtParams, SuperpotentialSpec};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use serde::Serialize;

/// Parameters of the modified algebra.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AlgebraParams {
    pub b1: f64,
    pub mu: f64,
    pub k1: f64,
    pub k2: f64,
    pub mu1: f64,
    pub geom: TorusGeometry,
}

impl AlgebraParams {
    /// The closure family on a horn torus of radius `c`:
    /// `B₁ = -(c + K₁)/(2c)`, `μ = K₁/(2c) - 1/2`, `K₂ = -K₁ - 2c`, `μ₁ = μ + 1`.
    pub fn closure(c: f64, k1: f64) -> Result<Self> {
        let geom = TorusGeometry::new(c, c)?;
        let mu = k1 / (2.0 * c) - 0.5;
        Ok(Self {
            b1: -(c + k1) / (2.0 * c),
            mu,
            k1,
            k2: -k1 - 2.0 * c,
            mu1: mu + 1.0,
            geom,
        })
    }

    /// Largest violation of the closure relations.
    pub fn closure_defect(&self) -> f64 {
        let (a, c) = (self.geom.a, self.geom.c);
        [
            self.b1 + (c + self.k1) / (2.0 * c),
            self.mu - self.k1 / (2.0 * c) + 0.5,
            a - c,
            self.k2 + self.k1 + 2.0 * c,
            self.mu1 - self.mu - 1.0,
        ]
        .iter()
        .fold(0.0_f64, |m, v| m.max(v.abs()))
    }

    /// Pöschl–Teller weights `A = -μ - 1/2`, `B = -B₁` and tail `λ = -K₁`
    /// of the matching sin-tail superpotential.
    pub fn susy_image(&self) -> SuperpotentialSpec {
        SuperpotentialSpec::RationalSin {
            pt: PtParams::new(-self.mu - 0.5, -self.b1),
            lambda: -self.k1,
            geom: self.geom,
        }
    }
}

/// `(S, T) = (-cot x, B₁ csc x)`.
pub fn st_functions(b1: f64, x: f64) -> (f64, f64) {
    let (s, c) = x.sin_cos();
    (-c / s, b1 / s)
}

/// `(S', T') = (csc² x, -B₁ csc x cot x)`.
pub fn st_derivatives(b1: f64, x: f64) -> (f64, f64) {
    let (s, c) = x.sin_cos();
    (1.0 / (s * s), -b1 * c / (s * s))
}

/// `max |S' - S² - 1|` and `max |T' - S T|` over `grid`.
pub fn st_constraint_residuals(b1: f64, grid: &[f64]) -> (f64, f64) {
    grid.iter().fold((0.0_f64, 0.0_f64), |(r1, r2), &x| {
        let (s, t) = st_functions(b1, x);
        let (sp, tp) = st_derivatives(b1, x);
        (r1.max((sp - s * s - 1.0).abs()), r2.max((tp - s * t).abs()))
    })
}

/// Which modification function.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Which {
    One,
    Two,
}

fn sin_over_r(geom: &TorusGeometry, x: f64) -> Result<(f64, f64)> {
    let r = geom.radius(x);
    if r == 0.0 {
        return Err(Error::SingularGeometry { x });
    }
    let (s, c) = x.sin_cos();
    Ok((s / r, (geom.a + geom.c * c) / (r * r)))
}

/// `U₁ = -K sin x / (c + a cos x)` or `U₂ = +K sin x / (c + a cos x)`.
pub fn modification_u(k: f64, geom: &TorusGeometry, x: f64, which: Which) -> Result<f64> {
    Ok(u_and_derivative(k, geom, x, which)?.0)
}

fn u_and_derivative(k: f64, geom: &TorusGeometry, x: f64, which: Which) -> Result<(f64, f64)> {
    let (q, qp) = sin_over_r(geom, x)?;
    let sign = match which {
        Which::One => -1.0,
        Which::Two => 1.0,
    };
    Ok((sign * k * q, sign * k * qp))
}

/// Left side of the modification constraint,
/// `U₁² - U₁' + 2U₁(S(μ + 1/2) - T) - (U₂² - U₂' + 2U₂(S μ₁ - T))`,
/// maximized in absolute value over `grid`.
pub fn constraint_residual_77(p: &AlgebraParams, grid: &[f64]) -> Result<f64> {
    let mut worst = 0.0_f64;
    for &x in grid {
        let (s, t) = st_functions(p.b1, x);
        let (u1, u1p) = u_and_derivative(p.k1, &p.geom, x, Which::One)?;
        let (u2, u2p) = u_and_derivative(p.k2, &p.geom, x, Which::Two)?;
        let l1 = u1 * u1 - u1p + 2.0 * u1 * (s * (p.mu + 0.5) - t);
        let l2 = u2 * u2 - u2p + 2.0 * u2 * (s * p.mu1 - t);
        worst = worst.max((l1 - l2).abs());
    }
    Ok(worst)
}

/// Potential part of the Casimir operator `J² = -d²/dx² + V`:
/// `-1/4 + 2B₁μ cot x csc x + (μ² + B₁² - 1/4) csc² x
///  + 2K₁(B₁ + (μ+1) cos x)/R + K₁(a + K₁) sin² x / R²`.
pub fn casimir_potential(p: &AlgebraParams, x: f64) -> Result<f64> {
    let r = p.geom.radius(x);
    if r == 0.0 {
        return Err(Error::SingularGeometry { x });
    }
    let (s, c) = x.sin_cos();
    let (b1, mu, k1) = (p.b1, p.mu, p.k1);
    Ok(-0.25
        + 2.0 * b1 * mu * c / (s * s)
        + (mu * mu + b1 * b1 - 0.25) / (s * s)
        + 2.0 * k1 * (b1 + (mu + 1.0) * c) / r
        + k1 * (p.geom.a + k1) * s * s / (r * r))
}

/// Mean and standard deviation over `grid` of the Casimir potential minus
/// `V₋` of [`AlgebraParams::susy_image`]. The mean should be `A² - 1/4`.
pub fn casimir_susy_offset(p: &AlgebraParams, grid: &[f64]) -> Result<(f64, f64)> {
    let spec = p.susy_image();
    let diffs: Vec<f64> = grid
        .iter()
        .map(|&x| Ok(casimir_potential(p, x)? - partner_potentials(&spec, x)?.0))
        .collect::<Result<_>>()?;
    let n = diffs.len() as f64;
    let mean = diffs.iter().sum::<f64>() / n;
    let var = diffs.iter().map(|d| (d - mean).powi(2)).sum::<f64>() / n;
    Ok((mean, var.sqrt()))
}

/// `ε(n) = (n + μ + 1/2)² - (μ + 1/2)²` and the physical energy `sqrt(ε)/a`.
pub fn algebra_spectrum(p: &AlgebraParams, n: usize) -> (f64, f64) {
    let m = p.mu + 0.5;
    let eps = (n as f64 + m).powi(2) - m * m;
    (eps, eps.max(0.0).sqrt() / p.geom.a)
}

/// Raising or lowering generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ladder {
    Raise,
    Lower,
}

/// Sign convention for the derivative in `J±`.
///
/// `Printed` reads the generators as `i[±d/dx - ((μ ± 1/2)S - T) + U]`,
/// which does not close even without `U`. `SignCorrected` uses `∓d/dx`,
/// for which `[J₊, J₋] = -2J₃` holds exactly when `U = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum OperatorReading {
    Printed,
    SignCorrected,
}

/// `J±` on one sector as `i` times a banded real matrix on the grid nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct SectorOperator {
    pub sub: Vec<f64>,
    pub diag: Vec<f64>,
    pub sup: Vec<f64>,
}

impl SectorOperator {
    pub fn apply(&self, psi: &[Complex64]) -> Vec<Complex64> {
        let n = self.diag.len();
        let i = Complex64::new(0.0, 1.0);
        (0..n)
            .map(|j| {
                let mut s = psi[j] * self.diag[j];
                if j > 0 {
                    s += psi[j - 1] * self.sub[j - 1];
                }
                if j + 1 < n {
                    s += psi[j + 1] * self.sup[j];
                }
                i * s
            })
            .collect()
    }
}

pub const MIN_SECTOR_POINTS: usize = 256;

/// Discretized `J±` acting on sector `mu_sector`. Uses `U₁` for `J₊` and
/// `U₂` for `J₋`; `d/dx` is a central difference with one-sided ends.
pub fn sector_operator(
    p: &AlgebraParams,
    mu_sector: f64,
    ladder: Ladder,
    grid: &Grid1D,
    reading: OperatorReading,
) -> Result<SectorOperator> {
    let n = grid.n_points;
    if n < MIN_SECTOR_POINTS {
        return Err(Error::GridTooCoarse {
            points: n,
            required: MIN_SECTOR_POINTS,
        });
    }
    let h = grid.spacing();
    let (half, which, k) = match ladder {
        Ladder::Raise => (0.5, Which::One, p.k1),
        Ladder::Lower => (-0.5, Which::Two, p.k2),
    };
    let dsign = match (reading, ladder) {
        (OperatorReading::Printed, Ladder::Raise) | (OperatorReading::SignCorrected, Ladder::Lower) => 1.0,
        _ => -1.0,
    };
    let mut sub = vec![0.0; n - 1];
    let mut sup = vec![0.0; n - 1];
    let mut diag = Vec::with_capacity(n);
    for j in 0..n {
        let x = grid.node(j);
        let (s, t) = st_functions(p.b1, x);
        let u = modification_u(k, &p.geom, x, which)?;
        diag.push(-((mu_sector + half) * s - t) + u);
    }
    for j in 0..n {
        if j == 0 {
            diag[0] -= dsign / h;
            sup[0] += dsign / h;
        } else if j + 1 == n {
            diag[n - 1] += dsign / h;
            sub[n - 2] -= dsign / h;
        } else {
            sub[j - 1] -= dsign / (2.0 * h);
            sup[j] += dsign / (2.0 * h);
        }
    }
    Ok(SectorOperator { sub, diag, sup })
}

/// `‖([J₊, J₋] + 2J₃)ψ‖ / ‖ψ‖` on sector `mu`, measured on nodes at least
/// two steps from either end.
pub fn commutator_residual(
    p: &AlgebraParams,
    mu: f64,
    grid: &Grid1D,
    psi: &[f64],
    reading: OperatorReading,
) -> Result<f64> {
    let psi: Vec<Complex64> = psi.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    let raise_below = sector_operator(p, mu - 1.0, Ladder::Raise, grid, reading)?;
    let lower_here = sector_operator(p, mu, Ladder::Lower, grid, reading)?;
    let lower_above = sector_operator(p, mu + 1.0, Ladder::Lower, grid, reading)?;
    let raise_here = sector_operator(p, mu, Ladder::Raise, grid, reading)?;
    let pm = raise_below.apply(&lower_here.apply(&psi));
    let mp = lower_above.apply(&raise_here.apply(&psi));
    let n = psi.len();
    let (mut num, mut den) = (0.0, 0.0);
    for j in 2..n - 2 {
        num += (pm[j] - mp[j] + 2.0 * mu * psi[j]).norm_sqr();
        den += psi[j].norm_sqr();
    }
    Ok((num / den).sqrt())
}

/// Smooth test function `Σ_{j=1..5} c_j sin(j x + φ_j)` with seeded coefficients.
pub fn random_smooth_function(grid: &Grid1D, seed: u64) -> Vec<f64> {
    let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
    let terms: Vec<(f64, f64)> = (0..5)
        .map(|_| (rng.gen_range(-1.0..1.0), rng.gen_range(0.0..std::f64::consts::TAU)))
        .collect();
    grid.sample(|x| {
        terms
            .iter()
            .enumerate()
            .map(|(j, (c, phi))| c * ((j + 1) as f64 * x + phi).sin())
            .sum()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
        (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
    }

    fn unit_params(b1: f64, mu: f64, k1: f64, k2: f64, mu1: f64) -> AlgebraParams {
        AlgebraParams {
            b1,
            mu,
            k1,
            k2,
            mu1,
            geom: TorusGeometry::new(1.0, 1.0).unwrap(),
        }
    }

    #[test]
    fn st_examples_and_identities() {
        assert_eq!(st_functions(-2.5, FRAC_PI_2).1, -2.5);
        assert!(st_functions(-2.5, FRAC_PI_2).0.abs() < 1e-16);
        let (r1, r2) = st_constraint_residuals(-1.3, &grid(0.1, PI - 0.1, 500));
        assert!(r1 < 1e-10 && r2 < 1e-10);
    }

    #[test]
    fn modification_examples() {
        let g = TorusGeometry::new(1.0, 1.0).unwrap();
        assert!((modification_u(2.0, &g, FRAC_PI_2, Which::One).unwrap() + 2.0).abs() < 1e-15);
        assert_eq!(modification_u(3.0, &g, 0.0, Which::Two).unwrap(), 0.0);
        let x = 0.9;
        let ratio = modification_u(-1.5, &g, x, Which::Two).unwrap() / modification_u(2.5, &g, x, Which::One).unwrap();
        assert!((ratio - 1.5 / 2.5).abs() < 1e-14);
    }

    #[test]
    fn casimir_point_value() {
        let v = casimir_potential(&unit_params(-2.5, 1.5, 0.0, 0.0, 2.5), FRAC_PI_2).unwrap();
        assert!((v - 8.0).abs() < 1e-14);
    }

    #[test]
    fn casimir_minus_susy_is_constant() {
        let p = AlgebraParams::closure(1.0, 2.0).unwrap();
        let (mean, sd) = casimir_susy_offset(&p, &grid(0.1, 2.9, 400)).unwrap();
        let a = -p.mu - 0.5;
        assert!((mean - (a * a - 0.25)).abs() < 1e-10 && sd < 1e-10);
    }

    #[test]
    fn u_free_constraint_vanishes() {
        let p = unit_params(0.7, 1.1, 0.0, 0.0, 3.4);
        assert_eq!(constraint_residual_77(&p, &grid(0.1, 3.0, 100)).unwrap(), 0.0);
    }

    #[test]
    fn closure_family_leaves_a_nonzero_remainder() {
        // the remainder is (K₁ + 2c)(cos x - 2)/(c(1 + cos x)) for a = c
        let p = AlgebraParams::closure(1.0, 2.0).unwrap();
        assert!(p.closure_defect() < 1e-15);
        let x = 1.0_f64;
        let expect = ((p.k1 + 2.0) * (x.cos() - 2.0) / (1.0 + x.cos())).abs();
        let r = constraint_residual_77(&p, &[x]).unwrap();
        assert!((r - expect).abs() < 1e-12, "{r} vs {expect}");
    }

    #[test]
    fn u_free_commutator_closes_to_second_order() {
        let p = unit_params(-0.7, 0.5, 0.0, 0.0, 1.5);
        let mut prev = f64::INFINITY;
        for n in [512, 1024, 2048] {
            let g = Grid1D::new(0.3, PI - 0.3, n).unwrap();
            let psi = random_smooth_function(&g, 11);
            let r = commutator_residual(&p, p.mu, &g, &psi, OperatorReading::SignCorrected).unwrap();
            assert!(r < prev / 3.0 || r < 1e-6, "{r} after {prev}");
            prev = r;
        }
        assert!(prev < 1e-4);
    }

    #[test]
    fn printed_reading_does_not_close() {
        let p = unit_params(-0.7, 0.5, 0.0, 0.0, 1.5);
        let g = Grid1D::new(0.3, PI - 0.3, 1024).unwrap();
        let psi = random_smooth_function(&g, 11);
        let r = commutator_residual(&p, p.mu, &g, &psi, OperatorReading::Printed).unwrap();
        assert!(r > 1e-2, "{r}");
    }

    #[test]
    fn closure_point_commutator_offset() {
        // with U₁, U₂ from the closure family the commutator is shifted by a constant
        let p = AlgebraParams::closure(1.0, 2.0).unwrap();
        let g = Grid1D::new(0.3, PI - 0.3, 2048).unwrap();
        let psi = random_smooth_function(&g, 3);
        let r = commutator_residual(&p, p.mu, &g, &psi, OperatorReading::SignCorrected).unwrap();
        assert!((r - 2.0 * (p.k1 + 1.0)).abs() < 1e-3, "{r}");
    }

    #[test]
    fn spectrum_matches_susy_formula() {
        let p = unit_params(-0.5, 1.5, 0.0, 0.0, 2.5);
        let eps: Vec<f64> = (0..5).map(|n| algebra_spectrum(&p, n).0).collect();
        assert_eq!(eps, vec![0.0, 5.0, 12.0, 21.0, 32.0]);
    }

    #[test]
    fn too_coarse_sector() {
        let p = unit_params(0.0, 0.0, 0.0, 0.0, 1.0);
        let g = Grid1D::new(0.3, 2.8, 100).unwrap();
        assert!(matches!(
            sector_operator(&p, 0.0, Ladder::Raise, &g, OperatorReading::SignCorrected),
            Err(Error::GridTooCoarse { .. })
        ));
    }
}
