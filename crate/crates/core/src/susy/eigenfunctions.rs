//! Closed-form eigenfunctions and spinor components.

use super::potentials::{PTCoefficients, PtParams, SuperpotentialSpec};
use crate::error::{Error, Result};
use crate::geometry::TorusGeometry;
use crate::oracle::Grid1D;
use crate::reference::tanh_sinh;
use crate::special::{jacobi_poly, JacobiParams};
use serde::Serialize;
use std::f64::consts::PI;

/// `(1 - cos x, 1 + cos x)` computed from half angles.
fn one_minus_plus_cos(x: f64) -> (f64, f64) {
    let (s, c) = (0.5 * x).sin_cos();
    (2.0 * s * s, 2.0 * c * c)
}

/// Unnormalized `F⁻ₙ(x) = (1-cos x)^((-A-B)/2) (1+cos x)^((-A+B)/2) Pₙ^(-A-B-1/2, -A+B-1/2)(cos x)`.
pub fn eigenfunction_minus(pt: &PtParams, n: usize, x: f64) -> f64 {
    let (m, p) = one_minus_plus_cos(x);
    let (a, b) = (pt.a, pt.b);
    m.powf(0.5 * (-a - b)) * p.powf(0.5 * (-a + b)) * jacobi_poly(JacobiParams::new(n, -a - b - 0.5, -a + b - 0.5), x.cos())
}

/// Unnormalized partner eigenfunction for the sin-tail family with `c = a`:
///
/// `(1-cos x)^((-A-B)/2) (1+cos x)^((B-A)/2) / a ·
///  [a(2A-n)/2 P_{n-1}^(1/2-A-B, 1/2-A+B)(cos x) sin x + λ Pₙ^(-1/2-A-B, -1/2-A+B)(cos x) tan(x/2)]`.
pub fn eigenfunction_plus_at(pt: &PtParams, lambda: f64, a: f64, n: usize, x: f64) -> Result<f64> {
    if n == 0 {
        return Err(Error::Domain("partner eigenfunctions are indexed from n = 1".into()));
    }
    let (m, p) = one_minus_plus_cos(x);
    let (aa, bb) = (pt.a, pt.b);
    let z = x.cos();
    let weight = m.powf(0.5 * (-aa - bb)) * p.powf(0.5 * (bb - aa)) / a;
    let first = a * (2.0 * aa - n as f64) / 2.0
        * jacobi_poly(JacobiParams::new(n - 1, 0.5 - aa - bb, 0.5 - aa + bb), z)
        * x.sin();
    let second = lambda * jacobi_poly(JacobiParams::new(n, -0.5 - aa - bb, -0.5 - aa + bb), z) * (0.5 * x).tan();
    Ok(weight * (first + second))
}

/// [`eigenfunction_plus_at`] sampled on `grid`. Accepts the pure family
/// (`λ = 0`, `a = 1`) and the sin-tail family on a horn torus.
pub fn eigenfunction_plus(spec: &SuperpotentialSpec, n: usize, grid: &Grid1D) -> Result<Vec<f64>> {
    let (pt, lambda, a) = match *spec {
        SuperpotentialSpec::PureTrigPt(pt) => (pt, 0.0, 1.0),
        SuperpotentialSpec::RationalSin { pt, lambda, geom } if geom.equal_radii() => (pt, lambda, geom.a),
        _ => {
            return Err(Error::Domain(
                "closed-form partner eigenfunctions need the pure or horn-torus sin-tail family".into(),
            ))
        }
    };
    grid.try_sample(|x| eigenfunction_plus_at(&pt, lambda, a, n, x))
}

fn exp_prefactor(a: f64, x: f64) -> f64 {
    let (_, p) = one_minus_plus_cos(x);
    (-a / (2.0 * a * p)).exp()
}

fn require_equal_radii(geom: &TorusGeometry) -> Result<()> {
    if geom.equal_radii() {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "spinor formula assumes a = c, got a = {}, c = {}",
            geom.a, geom.c
        )))
    }
}

/// Unnormalized first spinor component `e^{-a/(2(a + a cos x))} F⁻ₙ(x)`.
pub fn spinor_psi1(pt: &PtParams, geom: &TorusGeometry, n: usize, x: f64) -> Result<f64> {
    require_equal_radii(geom)?;
    Ok(exp_prefactor(geom.a, x) * eigenfunction_minus(pt, n, x))
}

/// Jacobi parameter order for the second spinor component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum JacobiOrder {
    /// `Pₙ^(-1, -λ/a)`
    Printed,
    /// `Pₙ^(-λ/a, -1)`, the order that solves the second-component equation.
    Swapped,
}

/// Unnormalized second spinor component
/// `e^{-a/(2(a + a cos x))} (1-cos x)^((a-2λ)/(4a)) (1+cos x)^(-1/4) Pₙ(cos x)`.
pub fn spinor_psi2(lambda: f64, geom: &TorusGeometry, n: usize, x: f64, order: JacobiOrder) -> Result<f64> {
    require_equal_radii(geom)?;
    Ok(exp_prefactor(geom.a, x) * component2_eigenfunction(lambda, geom.a, n, x, order))
}

/// Second-component solution without the exponential prefactor,
/// `(1-cos x)^((a-2λ)/(4a)) (1+cos x)^(-1/4) Pₙ(cos x)`.
pub fn component2_eigenfunction(lambda: f64, a: f64, n: usize, x: f64, order: JacobiOrder) -> f64 {
    let (m, p) = one_minus_plus_cos(x);
    let (alpha, beta) = match order {
        JacobiOrder::Printed => (-1.0, -lambda / a),
        JacobiOrder::Swapped => (-lambda / a, -1.0),
    };
    m.powf((a - 2.0 * lambda) / (4.0 * a)) * p.powf(-0.25) * jacobi_poly(JacobiParams::new(n, alpha, beta), x.cos())
}

/// Second-component partner potential
/// `-λ²/(4a²) - (1/2 - λ²/(2a²)) cot x csc x + (1/2)(1/2 + λ²/a²) csc² x`.
pub fn component2_potential_minus(lambda: f64, a: f64) -> PTCoefficients {
    let r = lambda * lambda / (a * a);
    PTCoefficients::new(0.5 * (0.5 + r), -(0.5 - 0.5 * r), -0.25 * r)
}

/// Relative Schrödinger residual `max|-F'' + (V - ε)F| / max|F|` over `points`,
/// with `F''` from a Richardson-extrapolated central difference of step `h`.
pub fn schrodinger_residual<F, V>(f: F, v: V, eps: f64, points: &[f64], h: f64) -> f64
where
    F: Fn(f64) -> f64,
    V: Fn(f64) -> f64,
{
    let d2 = |x: f64, h: f64| (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
    let mut num = 0.0_f64;
    let mut den = 0.0_f64;
    for &x in points {
        let fx = f(x);
        let fpp = (4.0 * d2(x, 0.5 * h) - d2(x, h)) / 3.0;
        num = num.max((-fpp + (v(x) - eps) * fx).abs());
        den = den.max(fx.abs());
    }
    num / den
}

/// Number of sign changes, ignoring samples below `1e-10` of the peak.
pub fn node_count(values: &[f64]) -> usize {
    let peak = values.iter().fold(0.0_f64, |a, v| a.max(v.abs()));
    let mut last = 0.0;
    let mut count = 0;
    for &v in values {
        if v.abs() <= 1e-10 * peak {
            continue;
        }
        if last != 0.0 && (v > 0.0) != (last > 0.0) {
            count += 1;
        }
        last = v;
    }
    count
}

/// Constant `N` with `∫ (N f)² dx = 1` over `(lo, hi)`, by tanh-sinh quadrature.
pub fn l2_normalize<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64) -> Result<f64> {
    let (val, err) = tanh_sinh(|x, _, _| f(x).powi(2), lo, hi, 1e-12);
    if !val.is_finite() || val <= 0.0 || err > 1e-8 * val {
        return Err(Error::NormalizationFailure(format!(
            "integral of |f|^2 = {val:e} (error estimate {err:e})"
        )));
    }
    Ok(1.0 / val.sqrt())
}

/// Local power-law exponents of `|f|` at both ends of `(0, π)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IntegrabilityProbe {
    pub exponent_lo: f64,
    pub exponent_hi: f64,
    /// `|f|²` integrable at both ends: `2p > -1`.
    pub normalizable: bool,
}

/// Estimates `p` in `|f| ~ d^p` at distances `d = 1e-7, 1e-6` from each end.
/// Samples that underflow to zero are read as faster-than-power decay.
pub fn integrability_probe<F: Fn(f64) -> f64>(f: F) -> IntegrabilityProbe {
    let exponent = |g: &dyn Fn(f64) -> f64| -> f64 {
        let (d1, d2) = (1e-7, 1e-6);
        let (v1, v2) = (g(d1).abs(), g(d2).abs());
        if v1 == 0.0 {
            return f64::INFINITY;
        }
        (v2 / v1).ln() / (d2 / d1).ln()
    };
    let lo = exponent(&|d| f(d));
    let hi = exponent(&|d| f(PI - d));
    let ok = |p: f64| p.is_nan() || 2.0 * p > -1.0;
    IntegrabilityProbe {
        exponent_lo: lo,
        exponent_hi: hi,
        normalizable: ok(lo) && ok(hi),
    }
}

/// Substitution report for the second spinor component of level `n`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Component2Report {
    pub n: usize,
    pub lambda: f64,
    pub a: f64,
    /// `(n - A)² - A²` with `A = λ/(2a)`.
    pub eps: f64,
    pub residual_printed: f64,
    /// Residual of the printed form with `ε` refitted by least squares.
    pub residual_printed_fit: f64,
    pub eps_printed_fit: f64,
    pub residual_swapped: f64,
    pub probe: IntegrabilityProbe,
    pub warnings: Vec<String>,
}

/// Substitutes both Jacobi orders into `-F'' + V₂₋ F = ε F` on `grid`.
pub fn component2_report(lambda: f64, geom: &TorusGeometry, n: usize, grid: &Grid1D) -> Result<Component2Report> {
    require_equal_radii(geom)?;
    let a = geom.a;
    let big_a = lambda / (2.0 * a);
    let nf = n as f64;
    let eps = (nf - big_a).powi(2) - big_a * big_a;
    let v = component2_potential_minus(lambda, a);
    let points = grid.nodes();
    let h = 2e-3;
    let printed = |x: f64| component2_eigenfunction(lambda, a, n, x, JacobiOrder::Printed);
    let swapped = |x: f64| component2_eigenfunction(lambda, a, n, x, JacobiOrder::Swapped);

    let d2 = |x: f64| {
        let s = |hh: f64| (printed(x + hh) - 2.0 * printed(x) + printed(x - hh)) / (hh * hh);
        (4.0 * s(0.5 * h) - s(h)) / 3.0
    };
    let (mut num, mut den) = (0.0, 0.0);
    for &x in &points {
        let fx = printed(x);
        num += fx * (-d2(x) + v.eval(x) * fx);
        den += fx * fx;
    }
    let eps_fit = if den > 0.0 { num / den } else { f64::NAN };

    let residual_printed = schrodinger_residual(printed, |x| v.eval(x), eps, &points, h);
    let residual_printed_fit = schrodinger_residual(printed, |x| v.eval(x), eps_fit, &points, h);
    let residual_swapped = schrodinger_residual(swapped, |x| v.eval(x), eps, &points, h);
    let probe = integrability_probe(|x| spinor_psi2(lambda, geom, n, x, JacobiOrder::Printed).unwrap_or(f64::NAN));

    let mut warnings = vec!["degenerate Jacobi parameter alpha = -1 in the printed form".to_string()];
    if !probe.normalizable {
        warnings.push("psi2 is not square integrable".to_string());
    }
    Ok(Component2Report {
        n,
        lambda,
        a,
        eps,
        residual_printed,
        residual_printed_fit,
        eps_printed_fit: eps_fit,
        residual_swapped,
        probe,
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::susy::{ladder_apply, cosine_similarity, Direction};
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn ground_state_at_half_pi() {
        let f = eigenfunction_minus(&PtParams::new(-2.0, 0.5), 0, FRAC_PI_2);
        assert!((f - 1.0).abs() < 1e-15);
    }

    #[test]
    fn substitution_and_nodes() {
        let pt = PtParams::new(-2.0, 0.5);
        let v = pt.minus_coefficients();
        let g = Grid1D::new(0.05, PI - 0.05, 2001).unwrap();
        let pts = g.nodes();
        for n in 0..5 {
            let eps = (n as f64 + 2.0).powi(2) - 4.0;
            let r = schrodinger_residual(|x| eigenfunction_minus(&pt, n, x), |x| v.eval(x), eps, &pts, 2e-3);
            assert!(r < 1e-6, "n={n}: {r}");
            let samples = g.sample(|x| eigenfunction_minus(&pt, n, x));
            assert_eq!(node_count(&samples), n);
        }
    }

    #[test]
    fn plus_matches_ladder_for_pure_family() {
        let pt = PtParams::new(-2.0, 0.5);
        let spec = SuperpotentialSpec::PureTrigPt(pt);
        let g = Grid1D::new(0.01, PI - 0.01, 8001).unwrap();
        let f1 = g.sample(|x| eigenfunction_minus(&pt, 1, x));
        let af = ladder_apply(&spec, &f1, &g, Direction::Lower).unwrap();
        let closed = eigenfunction_plus(&spec, 1, &g).unwrap();
        assert!(cosine_similarity(&af, &closed) > 1.0 - 1e-6);
    }

    #[test]
    fn plus_lambda_zero_reduces_to_sine_term() {
        let pt = PtParams::new(-3.0, 0.5);
        let x = 1.1;
        let with = eigenfunction_plus_at(&pt, 0.0, 1.0, 2, x).unwrap();
        let (m, p) = one_minus_plus_cos(x);
        let expect = m.powf(1.25) * p.powf(1.75) * (-4.0) * jacobi_poly(JacobiParams::new(1, 3.0, 4.0), x.cos()) * x.sin();
        assert!((with - expect).abs() < 1e-12 * expect.abs());
        assert!(eigenfunction_plus_at(&pt, 0.0, 1.0, 0, x).is_err());
    }

    #[test]
    fn psi1_prefactor_and_decay() {
        let geom = TorusGeometry::new(1.0, 1.0).unwrap();
        assert!((exp_prefactor(1.0, 0.0) - (-0.25_f64).exp()).abs() < 1e-15);
        let pt = PtParams::new(-2.0, 0.5);
        assert!(spinor_psi1(&pt, &geom, 1, PI - 1e-3).unwrap().abs() < 1e-100);
        let n1 = l2_normalize(|x| spinor_psi1(&pt, &geom, 1, x).unwrap(), 0.0, PI).unwrap();
        let g = Grid1D::new(1e-6, PI - 1e-6, 20001).unwrap();
        let sq: Vec<f64> = g.sample(|x| (n1 * spinor_psi1(&pt, &geom, 1, x).unwrap()).powi(2));
        let total = crate::reference::trapezoid(&sq, g.spacing());
        assert!((total - 1.0).abs() < 1e-6, "{total}");
        assert!(spinor_psi1(&pt, &TorusGeometry::new(1.0, 2.0).unwrap(), 0, 1.0).is_err());
    }

    #[test]
    fn divergent_norm_is_reported() {
        let e = l2_normalize(|x| x.powf(-0.6), 0.0, 1.0);
        assert!(matches!(e, Err(Error::NormalizationFailure(_))));
    }

    #[test]
    fn component2_swapped_order_solves() {
        let geom = TorusGeometry::new(1.0, 1.0).unwrap();
        let g = Grid1D::new(0.2, PI - 0.2, 401).unwrap();
        let r0 = component2_report(0.6, &geom, 0, &g).unwrap();
        assert!(r0.residual_printed < 1e-6 && r0.residual_swapped < 1e-6);
        let r2 = component2_report(0.6, &geom, 2, &g).unwrap();
        assert!(r2.residual_swapped < 1e-6, "{}", r2.residual_swapped);
        assert!(r2.residual_printed > 1e-3, "{}", r2.residual_printed);
    }

    #[test]
    fn probe_exponents() {
        let p = integrability_probe(|x| x.powf(-0.4) * (PI - x).powf(1.0));
        assert!((p.exponent_lo + 0.4).abs() < 1e-6 && (p.exponent_hi - 1.0).abs() < 1e-6);
        assert!(p.normalizable);
        assert!(!integrability_probe(|x| x.powf(-0.6)).normalizable);
    }

    #[test]
    fn component2_potential_is_sign_flipped_pt() {
        let lambda: f64 = 0.6;
        let big_a = lambda / 2.0;
        let flipped = PtParams::new(big_a, -(0.5 - big_a)).minus_coefficients();
        let v = component2_potential_minus(lambda, 1.0);
        for x in [0.3, 1.2, 2.7] {
            assert!((v.eval(x) - flipped.eval(x)).abs() < 1e-12);
        }
    }
}
