use crate::error::{Error, Result};
use crate::geometry::TorusGeometry;
use crate::special::{appell_f1, incomplete_beta, numeric_derivative, DerivOrder, SeriesControl};
use serde::Serialize;

/// Weights of the Pöschl–Teller core `W = A cot x + B csc x`; `a` is `A`, `b` is `B`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PtParams {
    pub a: f64,
    pub b: f64,
}

impl PtParams {
    pub fn new(a: f64, b: f64) -> Self {
        Self { a, b }
    }

    /// Both Jacobi weight exponents positive, so the eigenfunctions vanish at
    /// the endpoints and form an L² basis.
    pub fn normalizable(&self) -> bool {
        self.a < -self.b.abs()
    }

    pub fn w(&self, x: f64) -> f64 {
        let (s, c) = x.sin_cos();
        (self.a * c + self.b) / s
    }

    pub fn w_prime(&self, x: f64) -> f64 {
        let (s, c) = x.sin_cos();
        -(self.a + self.b * c) / (s * s)
    }

    /// Coefficients of `W² - W'`.
    pub fn minus_coefficients(&self) -> PTCoefficients {
        let (a, b) = (self.a, self.b);
        PTCoefficients::new(a * a + a + b * b, (1.0 + 2.0 * a) * b, -a * a)
    }

    /// Coefficients of `W² + W'`.
    pub fn plus_coefficients(&self) -> PTCoefficients {
        let (a, b) = (self.a, self.b);
        PTCoefficients::new(a * a - a + b * b, (2.0 * a - 1.0) * b, -a * a)
    }

    /// `exp(2∫W) = 4^A sin(x/2)^(2A+2B) cos(x/2)^(2A-2B)`.
    pub fn ground_state_inv_sq(&self, x: f64) -> f64 {
        let (sh, ch) = (0.5 * x).sin_cos();
        (self.a * 4f64.ln() + (2.0 * self.a + 2.0 * self.b) * sh.ln() + (2.0 * self.a - 2.0 * self.b) * ch.ln()).exp()
    }
}

/// `coeff_csc2 csc²x + coeff_cotcsc cot x csc x + eps_const`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PTCoefficients {
    pub coeff_csc2: f64,
    pub coeff_cotcsc: f64,
    pub eps_const: f64,
}

impl PTCoefficients {
    pub fn new(coeff_csc2: f64, coeff_cotcsc: f64, eps_const: f64) -> Self {
        Self {
            coeff_csc2,
            coeff_cotcsc,
            eps_const,
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        let (s, c) = x.sin_cos();
        (self.coeff_csc2 + self.coeff_cotcsc * c) / (s * s) + self.eps_const
    }

    pub fn is_zero(&self) -> bool {
        self.coeff_csc2 == 0.0 && self.coeff_cotcsc == 0.0 && self.eps_const == 0.0
    }

    /// Leading `1/x²` coefficient at `x → 0` and `1/(π - x)²` at `x → π`.
    pub fn endpoint_strengths(&self) -> (f64, f64) {
        (self.coeff_csc2 + self.coeff_cotcsc, self.coeff_csc2 - self.coeff_cotcsc)
    }
}

/// The superpotential families.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SuperpotentialSpec {
    PureTrigPt(PtParams),
    RationalSin { pt: PtParams, lambda: f64, geom: TorusGeometry },
    BetaTail { pt: PtParams, c1: f64, geom: TorusGeometry },
    AppellTail { pt: PtParams, lambda: f64, c1: f64, geom: TorusGeometry },
}

impl SuperpotentialSpec {
    /// Validating constructor for the beta-tail family, whose incomplete beta
    /// integral converges only for `1/2 + A - B > 0`.
    pub fn beta_tail(pt: PtParams, c1: f64, geom: TorusGeometry) -> Result<Self> {
        if !(0.5 + pt.a - pt.b > 0.0) {
            return Err(Error::Domain(format!(
                "beta tail needs 1/2 + A - B > 0, got {}",
                0.5 + pt.a - pt.b
            )));
        }
        Ok(Self::BetaTail { pt, c1, geom })
    }

    /// Validating constructor for the Appell-tail family, whose integral
    /// from `x = 0` converges only for `A + B + 1/2 > 0`.
    pub fn appell_tail(pt: PtParams, lambda: f64, c1: f64, geom: TorusGeometry) -> Result<Self> {
        if !(pt.a + pt.b + 0.5 > 0.0) {
            return Err(Error::Domain(format!(
                "Appell tail needs A + B + 1/2 > 0, got {}",
                pt.a + pt.b + 0.5
            )));
        }
        Ok(Self::AppellTail { pt, lambda, c1, geom })
    }

    pub fn pt(&self) -> PtParams {
        match *self {
            Self::PureTrigPt(pt)
            | Self::RationalSin { pt, .. }
            | Self::BetaTail { pt, .. }
            | Self::AppellTail { pt, .. } => pt,
        }
    }

    pub fn geometry(&self) -> Option<TorusGeometry> {
        match *self {
            Self::PureTrigPt(_) => None,
            Self::RationalSin { geom, .. } | Self::BetaTail { geom, .. } | Self::AppellTail { geom, .. } => Some(geom),
        }
    }

    /// Coefficient of the `λ sin x / R` tail, zero for families without one.
    pub fn lambda(&self) -> f64 {
        match *self {
            Self::RationalSin { lambda, .. } | Self::AppellTail { lambda, .. } => lambda,
            _ => 0.0,
        }
    }

    pub fn normalizable(&self) -> bool {
        self.pt().normalizable()
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::PureTrigPt(_) => "pt",
            Self::RationalSin { .. } => "rational",
            Self::BetaTail { .. } => "beta",
            Self::AppellTail { .. } => "appell",
        }
    }
}

fn radius_checked(geom: &TorusGeometry, x: f64) -> Result<f64> {
    let r = geom.radius(x);
    if r == 0.0 || !r.is_finite() {
        Err(Error::SingularGeometry { x })
    } else {
        Ok(r)
    }
}

fn check_open_interval(x: f64) -> Result<()> {
    if x > 0.0 && x < std::f64::consts::PI {
        Ok(())
    } else {
        Err(Error::Domain(format!("x = {x} outside (0, pi)")))
    }
}

fn tail_control() -> SeriesControl {
    SeriesControl {
        max_terms: 20_000,
        abs_tol: 0.0,
        rel_tol: 1e-16,
    }
}

/// Beta-tail correction `h = G/R = F₀⁻² / (C₁ + 4^A B(cos²(x/2); 1/2+A-B, 1/2+A+B))`,
/// the solution of `h' = 2 W_PT h + h²`.
pub fn beta_tail_h(pt: &PtParams, c1: f64, x: f64) -> Result<f64> {
    check_open_interval(x)?;
    let z = (0.5 * x).cos().powi(2);
    let ib = incomplete_beta(z, 0.5 + pt.a - pt.b, 0.5 + pt.a + pt.b, tail_control())?;
    Ok(pt.ground_state_inv_sq(x) / (c1 + 4f64.powf(pt.a) * ib))
}

/// Appell-tail function `G(x) = F₀⁻² R^(1-2λ/a) / (C₁ - I(x))` with
/// `I(x) = 4^A (a+c)^(-2λ/a) u^p/p F1(p; 1/2-A+B, 2λ/a; p+1; u, k u)`,
/// `u = sin²(x/2)`, `k = 2a/(a+c)`, `p = A+B+1/2`.
pub fn appell_tail_g(pt: &PtParams, lambda: f64, c1: f64, geom: &TorusGeometry, x: f64) -> Result<f64> {
    check_open_interval(x)?;
    let r = radius_checked(geom, x)?;
    if r < 0.0 || geom.a + geom.c <= 0.0 {
        return Err(Error::Domain(format!("Appell tail needs R > 0, got R({x}) = {r}")));
    }
    let (a, c) = (geom.a, geom.c);
    let p = pt.a + pt.b + 0.5;
    let u = (0.5 * x).sin().powi(2);
    let k = 2.0 * a / (a + c);
    let e = 2.0 * lambda / a;
    let f1 = appell_f1(p, 0.5 - pt.a + pt.b, e, p + 1.0, u, k * u, tail_control())?;
    let integral = (pt.a * 4f64.ln() - e * (a + c).ln() + p * u.ln()).exp() / p * f1;
    let m = pt.ground_state_inv_sq(x) * r.powf(1.0 - e);
    Ok(m / (c1 - integral))
}

/// `W(x)` for the selected family.
pub fn superpotential_eval(spec: &SuperpotentialSpec, x: f64) -> Result<f64> {
    Ok(parts(spec, x)?.w)
}

/// `W'(x)` in closed form. For the integral tails this uses the Riccati
/// equation the tail satisfies by construction.
pub fn superpotential_derivative(spec: &SuperpotentialSpec, x: f64) -> Result<f64> {
    Ok(parts(spec, x)?.w_prime)
}

struct Parts {
    w: f64,
    w_prime: f64,
    v_minus: f64,
    v_plus: f64,
}

fn parts(spec: &SuperpotentialSpec, x: f64) -> Result<Parts> {
    check_open_interval(x)?;
    let pt = spec.pt();
    let w_pt = pt.w(x);
    let wp_pt = pt.w_prime(x);
    let pt_minus = pt.minus_coefficients().eval(x);
    let pt_plus = pt.plus_coefficients().eval(x);
    match *spec {
        SuperpotentialSpec::PureTrigPt(_) => Ok(Parts {
            w: w_pt,
            w_prime: wp_pt,
            v_minus: pt_minus,
            v_plus: pt_plus,
        }),
        SuperpotentialSpec::RationalSin { pt, lambda, geom } => {
            let r = radius_checked(&geom, x)?;
            let (s, c) = x.sin_cos();
            let q = s / r;
            let qp = (geom.a + geom.c * c) / (r * r);
            let nm = super::rational_numerator_minus(&pt, lambda, &geom, x);
            let np = super::rational_numerator_plus(&pt, lambda, &geom, x);
            Ok(Parts {
                w: w_pt + lambda * q,
                w_prime: wp_pt + lambda * qp,
                v_minus: pt_minus + lambda * nm / (2.0 * r * r),
                v_plus: pt_plus + lambda * np / (2.0 * r * r),
            })
        }
        SuperpotentialSpec::BetaTail { pt, c1, .. } => {
            let h = beta_tail_h(&pt, c1, x)?;
            let hp = 2.0 * w_pt * h + h * h;
            Ok(Parts {
                w: w_pt + h,
                w_prime: wp_pt + hp,
                v_minus: pt_minus,
                v_plus: pt_plus + 2.0 * h * (h + 2.0 * w_pt),
            })
        }
        SuperpotentialSpec::AppellTail { pt, lambda, c1, geom } => {
            let r = radius_checked(&geom, x)?;
            let (s, c) = x.sin_cos();
            let q = s / r;
            let qp = (geom.a + geom.c * c) / (r * r);
            let g = appell_tail_g(&pt, lambda, c1, &geom, x)? / r;
            let w_lambda = w_pt + lambda * q;
            let gp = 2.0 * w_lambda * g + g * g;
            let w_prime = wp_pt + lambda * qp + gp;
            let nm = super::rational_numerator_minus(&pt, lambda, &geom, x);
            let v_minus = pt_minus + lambda * nm / (2.0 * r * r);
            Ok(Parts {
                w: w_lambda + g,
                w_prime,
                v_minus,
                v_plus: v_minus + 2.0 * w_prime,
            })
        }
    }
}

/// Closed-form partner potentials `(V₋, V₊)`.
pub fn partner_potentials(spec: &SuperpotentialSpec, x: f64) -> Result<(f64, f64)> {
    let p = parts(spec, x)?;
    Ok((p.v_minus, p.v_plus))
}

/// How `W'` is obtained in [`susy_residual`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DerivativeMode {
    Analytic,
    FiniteDifference { h: f64 },
}

/// `max |V∓ - (W² ∓ W')|` over the grid.
pub fn susy_residual(spec: &SuperpotentialSpec, grid: &[f64], mode: DerivativeMode) -> Result<(f64, f64)> {
    let mut worst = (0.0_f64, 0.0_f64);
    for &x in grid {
        let p = parts(spec, x)?;
        let wp = match mode {
            DerivativeMode::Analytic => p.w_prime,
            DerivativeMode::FiniteDifference { h } => {
                // evaluate both sides first so domain errors surface
                superpotential_eval(spec, x - h)?;
                superpotential_eval(spec, x + h)?;
                numeric_derivative(
                    |t| superpotential_eval(spec, t).unwrap_or(f64::NAN),
                    x,
                    DerivOrder::First,
                    h,
                )
            }
        };
        let w2 = p.w * p.w;
        worst.0 = worst.0.max((p.v_minus - (w2 - wp)).abs());
        worst.1 = worst.1.max((p.v_plus - (w2 + wp)).abs());
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

    fn grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
        (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
    }

    #[test]
    fn pure_pt_point_values() {
        let spec = SuperpotentialSpec::PureTrigPt(PtParams::new(-2.0, 0.5));
        assert!((superpotential_eval(&spec, FRAC_PI_2).unwrap() - 0.5).abs() < 1e-15);
        let (vm, vp) = partner_potentials(&spec, FRAC_PI_2).unwrap();
        assert!((vm + 1.75).abs() < 1e-14);
        assert!((vp - 2.25).abs() < 1e-14);
    }

    #[test]
    fn rational_point_value() {
        let spec = SuperpotentialSpec::RationalSin {
            pt: PtParams::new(-2.0, 0.5),
            lambda: -4.0,
            geom: unit(),
        };
        assert!((superpotential_eval(&spec, FRAC_PI_2).unwrap() + 3.5).abs() < 1e-14);
    }

    #[test]
    fn pure_pt_identity_analytic() {
        let spec = SuperpotentialSpec::PureTrigPt(PtParams::new(-2.0, 0.5));
        let (m, p) = susy_residual(&spec, &grid(0.05, PI - 0.05, 2001), DerivativeMode::Analytic).unwrap();
        assert!(m < 1e-9 && p < 1e-9, "{m} {p}");
    }

    #[test]
    fn rational_identity_finite_difference() {
        let spec = SuperpotentialSpec::RationalSin {
            pt: PtParams::new(-1.3, 0.4),
            lambda: 0.7,
            geom: TorusGeometry::new(1.2, 2.1).unwrap(),
        };
        let fd = DerivativeMode::FiniteDifference { h: 1e-5 };
        let (m, p) = susy_residual(&spec, &grid(0.2, PI - 0.2, 501), fd).unwrap();
        assert!(m < 1e-6 && p < 1e-6, "{m} {p}");
    }

    #[test]
    fn beta_tail_identity_and_limit() {
        let pt = PtParams::new(0.3, -0.4);
        let spec = SuperpotentialSpec::beta_tail(pt, 1.5, unit()).unwrap();
        let fd = DerivativeMode::FiniteDifference { h: 1e-5 };
        let (m, p) = susy_residual(&spec, &grid(0.2, PI - 0.2, 301), fd).unwrap();
        assert!(m < 1e-6 && p < 1e-6, "{m} {p}");

        let big = SuperpotentialSpec::beta_tail(pt, 1e14, unit()).unwrap();
        let w = superpotential_eval(&big, 1.0).unwrap();
        assert!((w - pt.w(1.0)).abs() < 1e-12);
    }

    #[test]
    fn beta_tail_rejects_divergent_integral() {
        let e = SuperpotentialSpec::beta_tail(PtParams::new(-2.0, 0.5), 1.0, unit());
        assert!(matches!(e, Err(Error::Domain(_))));
    }

    #[test]
    fn appell_tail_identity() {
        let spec = SuperpotentialSpec::appell_tail(PtParams::new(1.0, -0.5), 2.0, -1.0, unit()).unwrap();
        let fd = DerivativeMode::FiniteDifference { h: 1e-5 };
        let (m, p) = susy_residual(&spec, &grid(0.2, 2.5, 201), fd).unwrap();
        assert!(m < 1e-6 && p < 1e-6, "{m} {p}");
    }

    #[test]
    fn endpoint_strengths() {
        let (l, r) = PtParams::new(-2.0, 0.5).minus_coefficients().endpoint_strengths();
        assert!((l - 0.75).abs() < 1e-15 && (r - 3.75).abs() < 1e-15);
    }

    #[test]
    fn normalizable_regime() {
        assert!(PtParams::new(-2.0, 0.5).normalizable());
        assert!(!PtParams::new(2.0, 5.0).normalizable());
        assert!(!PtParams::new(-0.5, 0.5).normalizable());
    }
}
