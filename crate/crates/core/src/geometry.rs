//! Torus geometry and the reduction of the Dirac system to Schrödinger form.
//!
//! The surface is `ds² = dt² - a² dx² - R(x)² du²` with `R = c + a cos x`.
//! After separating `e^{iEt - iku}` each spinor component obeys a second
//! order equation; the substitution `ψ = f(x) F(g(x))` with `V_F = 1/g'`
//! turns it into `F'' + (a⁴E² - V(x)) F = 0`.

use crate::error::{Error, Result};
use crate::susy::PTCoefficients;

/// Radii of the torus: `a` is the tube radius, `c` the distance to the axis.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct TorusGeometry {
    pub a: f64,
    pub c: f64,
}

impl TorusGeometry {
    pub fn new(a: f64, c: f64) -> Result<Self> {
        if !(a > 0.0) || !a.is_finite() {
            return Err(Error::InvalidParameter(format!("tube radius a must be > 0, got {a}")));
        }
        if c == 0.0 || !c.is_finite() {
            return Err(Error::InvalidParameter(format!("radius c must be finite and non-zero, got {c}")));
        }
        Ok(Self { a, c })
    }

    /// Horn torus, `a = c`.
    pub fn equal_radii(&self) -> bool {
        self.a == self.c
    }

    pub fn radius(&self, x: f64) -> f64 {
        self.c + self.a * x.cos()
    }

    fn nonzero_radius(&self, x: f64) -> Result<f64> {
        let r = self.radius(x);
        if r == 0.0 || !r.is_finite() {
            Err(Error::SingularGeometry { x })
        } else {
            Ok(r)
        }
    }
}

/// `(R, R', R'')` at `x`.
pub fn profile_radius(geom: &TorusGeometry, x: f64) -> (f64, f64, f64) {
    let (s, c) = x.sin_cos();
    (geom.c + geom.a * c, -geom.a * s, -geom.a * c)
}

/// `(Γ¹₂₂, Γ²₁₂)` at `x`.
pub fn christoffel(geom: &TorusGeometry, x: f64) -> Result<(f64, f64)> {
    let r = geom.nonzero_radius(x)?;
    let s = x.sin();
    Ok((r * s / geom.a, -geom.a * s / r))
}

/// Scalar `s(x)` with `Γ₂ = γ₁γ₂ s(x)`.
pub fn spin_connection_coeff(geom: &TorusGeometry, x: f64) -> Result<f64> {
    let r = geom.nonzero_radius(x)?;
    Ok(-geom.a * x.sin() / (2.0 * r))
}

/// Which spinor component a reduction refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum Component {
    First,
    Second,
}

impl Component {
    /// `+1` for the first component, `-1` for the second: the sign carried by
    /// the `k`-linear terms.
    fn sign(self) -> f64 {
        match self {
            Component::First => 1.0,
            Component::Second => -1.0,
        }
    }
}

/// Separation data: angular wavenumber along `u` and the spinor component.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeParams {
    pub k: f64,
    pub component: Component,
}

impl ModeParams {
    pub fn new(k: f64, component: Component) -> Self {
        Self { k, component }
    }
}

/// Effective potential `U₁` or `U₂` for a Fermi-velocity profile `vf(x) = (V_F, V_F')`.
///
/// Evaluated term by term as the reduction produces it, including the
/// uneven powers of `a` between terms.
pub fn effective_coefficients<V>(geom: &TorusGeometry, mode: ModeParams, vf: V, x: f64) -> Result<f64>
where
    V: Fn(f64) -> (f64, f64),
{
    let (r, r1, r2) = profile_radius(geom, x);
    if r == 0.0 {
        return Err(Error::SingularGeometry { x });
    }
    let (v, v1) = vf(x);
    if !(v > 0.0) {
        return Err(Error::InvalidVelocity { x, value: v });
    }
    let a = geom.a;
    let k = mode.k;
    let sg = mode.component.sign();
    let common = k * k * a.powi(4) / r.powi(4) - r1 * r1 * a * a / (4.0 * r.powi(4)) - r1 * r1 * a / r.powi(3)
        + r1 * v1 * a / (2.0 * r * r * v);
    let k_linear = sg * (-2.0 * k * r1 * a * a / r.powi(3) + k * v1 * a * a / (r * r * v));
    let curvature = match mode.component {
        Component::First => r2 * a / (2.0 * r * r),
        Component::Second => r2 * a / (2.0 * r * r * v),
    };
    Ok(common + k_linear + curvature)
}

/// Output of [`solve_g_transform`], sampled on the supplied grid.
#[derive(Debug, Clone, PartialEq)]
pub struct TransformResult {
    pub x: Vec<f64>,
    pub g: Vec<f64>,
    pub g_prime: Vec<f64>,
    pub fermi_velocity: Vec<f64>,
    pub prefactor_f: Vec<f64>,
}

impl TransformResult {
    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    /// `g''` at node `i` from central differences of `g'`: five-point in the
    /// interior, three-point one node in, one-sided second order at the ends.
    pub fn g_second(&self, i: usize) -> Result<f64> {
        let n = self.len();
        if i >= n {
            return Err(Error::IndexOutOfRange { index: i, len: n });
        }
        if n < 3 {
            return Err(Error::GridTooCoarse { points: n, required: 3 });
        }
        let h = (self.x[n - 1] - self.x[0]) / (n - 1) as f64;
        let d = &self.g_prime;
        Ok(if i >= 2 && i + 2 < n {
            (d[i - 2] - 8.0 * d[i - 1] + 8.0 * d[i + 1] - d[i + 2]) / (12.0 * h)
        } else if i >= 1 && i + 1 < n {
            (d[i + 1] - d[i - 1]) / (2.0 * h)
        } else if i == 0 {
            (-3.0 * d[0] + 4.0 * d[1] - d[2]) / (2.0 * h)
        } else {
            (3.0 * d[n - 1] - 4.0 * d[n - 2] + d[n - 3]) / (2.0 * h)
        })
    }
}

const SLOPE_MIN: f64 = 1e-8;
const SLOPE_MAX: f64 = 1e8;
const RK_SUBSTEPS: usize = 8;

/// Builds `g` so that the reduced potential equals the Pöschl–Teller target.
///
/// With `y = 1/g'²` the defining relation is linear and first order:
/// `y' = -2P y + 2Q` (first component) or `y' = 2P₂ y - 2Q` (second), where
/// `P = a²k/R² ∓ 2R'/R` and `Q = R² V_target / (a²k)`. It is integrated with
/// RK4 outward from the grid midpoint where `g' = h0`; `g` is the cumulative
/// integral of `g'` with `g(x_mid) = 0`.
pub fn solve_g_transform(
    geom: &TorusGeometry,
    mode: ModeParams,
    target: &PTCoefficients,
    grid: &[f64],
    h0: f64,
) -> Result<TransformResult> {
    if grid.len() < 3 {
        return Err(Error::GridTooCoarse { points: grid.len(), required: 3 });
    }
    if !(h0 > 0.0) || !h0.is_finite() {
        return Err(Error::InvalidParameter(format!("initial slope h0 must be > 0, got {h0}")));
    }
    let (lo, hi) = (grid[0], grid[grid.len() - 1]);
    if !(lo > 0.0 && hi < std::f64::consts::PI && lo < hi) {
        return Err(Error::Domain(format!("grid [{lo}, {hi}] must lie inside (0, pi)")));
    }
    for &x in grid {
        geom.nonzero_radius(x)?;
    }
    let k = mode.k;
    if k == 0.0 {
        if target.is_zero() {
            return Ok(build_result(geom, grid, vec![h0; grid.len()]));
        }
        return Err(Error::DegenerateMode);
    }

    let a2k = geom.a * geom.a * k;
    let sg = mode.component.sign();
    let rhs = |x: f64, y: f64| -> f64 {
        let (r, r1, _) = profile_radius(geom, x);
        let p = a2k / (r * r) - sg * 2.0 * r1 / r;
        let q = r * r * target.eval(x) / a2k;
        sg * (-2.0 * p * y + 2.0 * q)
    };

    let n = grid.len();
    let mid = n / 2;
    let mut y = vec![0.0; n];
    y[mid] = 1.0 / (h0 * h0);
    let check = |x: f64, y: f64| -> Result<()> {
        if !(y > 0.0) || !y.is_finite() {
            return Err(Error::BlowUp { x });
        }
        let h = y.powf(-0.5);
        if !(SLOPE_MIN..=SLOPE_MAX).contains(&h) {
            return Err(Error::BlowUp { x });
        }
        Ok(())
    };
    for i in mid + 1..n {
        y[i] = rk4(&rhs, grid[i - 1], grid[i], y[i - 1]);
        check(grid[i], y[i])?;
    }
    for i in (0..mid).rev() {
        y[i] = rk4(&rhs, grid[i + 1], grid[i], y[i + 1]);
        check(grid[i], y[i])?;
    }
    let h: Vec<f64> = y.iter().map(|v| v.powf(-0.5)).collect();
    Ok(build_result(geom, grid, h))
}

fn rk4<F: Fn(f64, f64) -> f64>(f: &F, x0: f64, x1: f64, y0: f64) -> f64 {
    let dx = (x1 - x0) / RK_SUBSTEPS as f64;
    let mut x = x0;
    let mut y = y0;
    for _ in 0..RK_SUBSTEPS {
        let k1 = f(x, y);
        let k2 = f(x + 0.5 * dx, y + 0.5 * dx * k1);
        let k3 = f(x + 0.5 * dx, y + 0.5 * dx * k2);
        let k4 = f(x + dx, y + dx * k3);
        y += dx / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        x += dx;
    }
    y
}

fn build_result(geom: &TorusGeometry, grid: &[f64], h: Vec<f64>) -> TransformResult {
    let n = grid.len();
    let mid = n / 2;
    let mut g = vec![0.0; n];
    for i in mid + 1..n {
        g[i] = g[i - 1] + 0.5 * (h[i] + h[i - 1]) * (grid[i] - grid[i - 1]);
    }
    for i in (0..mid).rev() {
        g[i] = g[i + 1] - 0.5 * (h[i] + h[i + 1]) * (grid[i + 1] - grid[i]);
    }
    let fermi_velocity = h.iter().map(|v| 1.0 / v).collect();
    let prefactor_f = grid.iter().map(|&x| (-geom.a / (2.0 * geom.radius(x))).exp()).collect();
    TransformResult {
        x: grid.to_vec(),
        g,
        g_prime: h,
        fermi_velocity,
        prefactor_f,
    }
}

/// Reduced potential at node `i` of a transform, with `g''` from [`TransformResult::g_second`].
pub fn reduced_potential(geom: &TorusGeometry, mode: ModeParams, t: &TransformResult, i: usize) -> Result<f64> {
    if i >= t.len() {
        return Err(Error::IndexOutOfRange { index: i, len: t.len() });
    }
    let x = t.x[i];
    let gp = t.g_prime[i];
    let gpp = t.g_second(i)?;
    Ok(reduced_potential_at(geom, mode, x, gp, gpp))
}

/// `a⁴k²/(R⁴g'²) ∓ 2a²kR'/(R³g'²) ∓ a²k g''/(R²g'³)` at a single point.
pub fn reduced_potential_at(geom: &TorusGeometry, mode: ModeParams, x: f64, gp: f64, gpp: f64) -> f64 {
    let (r, r1, _) = profile_radius(geom, x);
    let a = geom.a;
    let k = mode.k;
    let sg = mode.component.sign();
    a.powi(4) * k * k / (r.powi(4) * gp * gp)
        - sg * 2.0 * a * a * k * r1 / (r.powi(3) * gp * gp)
        - sg * a * a * k * gpp / (r * r * gp.powi(3))
}

/// `f(x) = C₁ e^{-a/(2R)} / sqrt(g' V_F)` with `C₁ = 1`, evaluated from the
/// stored slope and velocity so the identity `g' V_F = 1` is exercised.
pub fn prefactor_f(geom: &TorusGeometry, gp: f64, vf: f64, x: f64) -> Result<f64> {
    let r = geom.nonzero_radius(x)?;
    Ok((-geom.a / (2.0 * r)).exp() / (gp * vf).sqrt())
}

/// Largest `|V_target - V_reduced|` over the interior nodes of `t`, those
/// where the five-point stencil for `g''` fits.
pub fn transform_residual(geom: &TorusGeometry, mode: ModeParams, target: &PTCoefficients, t: &TransformResult) -> Result<f64> {
    let mut worst = 0.0_f64;
    for i in 2..t.len().saturating_sub(2) {
        let v = reduced_potential(geom, mode, t, i)?;
        worst = worst.max((v - target.eval(t.x[i])).abs());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn unit() -> TorusGeometry {
        TorusGeometry::new(1.0, 1.0).unwrap()
    }

    #[test]
    fn rejects_bad_radii() {
        assert!(TorusGeometry::new(0.0, 1.0).is_err());
        assert!(TorusGeometry::new(1.0, 0.0).is_err());
        assert!(TorusGeometry::new(1.0, -2.0).is_ok());
        assert!(unit().equal_radii());
    }

    #[test]
    fn profile_examples() {
        assert_eq!(profile_radius(&unit(), 0.0), (2.0, 0.0, -1.0));
        let g = TorusGeometry::new(1.0, 2.0).unwrap();
        let (r, r1, r2) = profile_radius(&g, FRAC_PI_2);
        assert!((r - 2.0).abs() < 1e-15 && (r1 + 1.0).abs() < 1e-15 && r2.abs() < 1e-15);
        assert_eq!(unit().radius(PI), 0.0);
    }

    #[test]
    fn christoffel_examples() {
        let g = TorusGeometry::new(1.0, 2.0).unwrap();
        let (g122, g212) = christoffel(&g, FRAC_PI_2).unwrap();
        assert!((g212 + 0.5).abs() < 1e-15 && (g122 - 2.0).abs() < 1e-15);
        assert_eq!(christoffel(&g, 0.0).unwrap(), (0.0, 0.0));
        assert!(matches!(christoffel(&unit(), PI), Err(Error::SingularGeometry { .. })));
    }

    #[test]
    fn spin_connection_is_half_christoffel() {
        assert!((spin_connection_coeff(&unit(), FRAC_PI_2).unwrap() + 0.5).abs() < 1e-15);
        assert_eq!(spin_connection_coeff(&unit(), 0.0).unwrap(), 0.0);
        let g = TorusGeometry::new(0.7, -2.3).unwrap();
        for i in 1..50 {
            let x = 0.06 * i as f64;
            let (_, g212) = christoffel(&g, x).unwrap();
            assert!((spin_connection_coeff(&g, x).unwrap() - 0.5 * g212).abs() < 1e-15);
        }
    }

    #[test]
    fn effective_coefficients_examples() {
        let flat = |_x: f64| (1.0, 0.0);
        let u1 = effective_coefficients(&unit(), ModeParams::new(0.0, Component::First), flat, FRAC_PI_2).unwrap();
        let u2 = effective_coefficients(&unit(), ModeParams::new(0.0, Component::Second), flat, FRAC_PI_2).unwrap();
        assert!((u1 + 1.25).abs() < 1e-14 && (u2 + 1.25).abs() < 1e-14);

        let g = TorusGeometry::new(1.0, 2.0).unwrap();
        let x = PI / 3.0;
        let d = effective_coefficients(&g, ModeParams::new(1.0, Component::First), flat, x).unwrap()
            - effective_coefficients(&g, ModeParams::new(1.0, Component::Second), flat, x).unwrap();
        let expect = 4.0 * (3.0_f64).sqrt() / 2.0 / 2.5_f64.powi(3);
        assert!((d - expect).abs() < 1e-14, "{d} vs {expect}");
    }

    #[test]
    fn effective_coefficients_rejects_bad_velocity() {
        let e = effective_coefficients(&unit(), ModeParams::new(1.0, Component::First), |_| (-1.0, 0.0), 1.0);
        assert!(matches!(e, Err(Error::InvalidVelocity { .. })));
    }

    #[test]
    fn degenerate_mode() {
        let grid: Vec<f64> = (0..101).map(|i| 0.5 + 0.01 * i as f64).collect();
        let target = PTCoefficients::new(2.25, -1.5, -4.0);
        let mode = ModeParams::new(0.0, Component::First);
        assert!(matches!(solve_g_transform(&unit(), mode, &target, &grid, 1.0), Err(Error::DegenerateMode)));
        let zero = PTCoefficients::new(0.0, 0.0, 0.0);
        let t = solve_g_transform(&unit(), mode, &zero, &grid, 1.0).unwrap();
        assert_eq!(reduced_potential(&unit(), mode, &t, 50).unwrap(), 0.0);
    }

    #[test]
    fn sum_of_components_at_fixed_slope() {
        let g = TorusGeometry::new(1.3, 0.4).unwrap();
        let (x, gp, gpp) = (0.8, 1.7, -0.3);
        let m1 = ModeParams::new(0.9, Component::First);
        let m2 = ModeParams::new(0.9, Component::Second);
        let sum = reduced_potential_at(&g, m1, x, gp, gpp) + reduced_potential_at(&g, m2, x, gp, gpp);
        let r = g.radius(x);
        let expect = 2.0 * g.a.powi(4) * 0.81 / (r.powi(4) * gp * gp);
        assert!((sum - expect).abs() < 1e-12);
    }

    #[test]
    fn prefactor_examples() {
        assert!((prefactor_f(&unit(), 1.0, 1.0, 0.0).unwrap() - (-0.25_f64).exp()).abs() < 1e-15);
        assert!(prefactor_f(&unit(), 1.0, 1.0, PI - 1e-3).unwrap() < 1e-100);
    }

    #[test]
    fn index_out_of_range() {
        let grid: Vec<f64> = (0..11).map(|i| 1.0 + 0.1 * i as f64).collect();
        let zero = PTCoefficients::new(0.0, 0.0, 0.0);
        let mode = ModeParams::new(0.0, Component::First);
        let t = solve_g_transform(&unit(), mode, &zero, &grid, 1.0).unwrap();
        assert!(matches!(reduced_potential(&unit(), mode, &t, 11), Err(Error::IndexOutOfRange { .. })));
    }
}
