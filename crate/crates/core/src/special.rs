//! Special functions needed by the closed-form solutions.
//!
//! - Jacobi polynomials `P_n^(α,β)(z)` by the forward three-term recurrence.
//! - The non-regularized incomplete beta integral `∫_0^z u^(s-1) (1-u)^(w-1) du`.
//! - The Appell `F1` double series, summed along anti-diagonals.
//! - Central finite differences for first and second derivatives.

use crate::error::{Error, Result};
use statrs::function::gamma::ln_gamma;

/// Truncation controls shared by the series and continued-fraction evaluators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesControl {
    pub max_terms: usize,
    pub abs_tol: f64,
    pub rel_tol: f64,
}

impl SeriesControl {
    pub fn new(max_terms: usize, abs_tol: f64, rel_tol: f64) -> Result<Self> {
        if max_terms == 0 {
            return Err(Error::InvalidParameter("max_terms must be >= 1".into()));
        }
        if !(abs_tol >= 0.0 && rel_tol >= 0.0) || (abs_tol == 0.0 && rel_tol == 0.0) {
            return Err(Error::InvalidParameter(
                "tolerances must be >= 0 with at least one positive".into(),
            ));
        }
        Ok(Self {
            max_terms,
            abs_tol,
            rel_tol,
        })
    }

    fn threshold(&self, scale: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * scale.abs())
    }
}

impl Default for SeriesControl {
    fn default() -> Self {
        Self {
            max_terms: 4000,
            abs_tol: 0.0,
            rel_tol: 1e-15,
        }
    }
}

/// Degree and parameters of a Jacobi polynomial.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiParams {
    pub n: usize,
    pub alpha: f64,
    pub beta: f64,
}

impl JacobiParams {
    pub fn new(n: usize, alpha: f64, beta: f64) -> Self {
        Self { n, alpha, beta }
    }
}

/// `P_n^(α,β)(z)` for any real `z`.
///
/// Uses the forward recurrence. When `α + β` is a negative integer the
/// recurrence coefficients vanish at some degree, and close to one the
/// recurrence loses digits; within 0.05 of such a value it falls back to the
/// explicit binomial sum, which is finite for every real `α, β`.
pub fn jacobi_poly(p: JacobiParams, z: f64) -> f64 {
    let JacobiParams { n, alpha, beta } = p;
    if n == 0 {
        return 1.0;
    }
    let ab = alpha + beta;
    let p1 = 0.5 * ((alpha - beta) + (ab + 2.0) * z);
    if n == 1 {
        return p1;
    }
    if recurrence_degenerate(n, ab) {
        return jacobi_binomial_sum(p, z);
    }

    let mut prev = 1.0;
    let mut curr = p1;
    for k in 2..=n {
        let k = k as f64;
        let two_k_ab = 2.0 * k + ab;
        let a1 = 2.0 * k * (k + ab) * (two_k_ab - 2.0);
        let a2 = (two_k_ab - 1.0) * (alpha * alpha - beta * beta);
        let a3 = (two_k_ab - 2.0) * (two_k_ab - 1.0) * two_k_ab;
        let a4 = 2.0 * (k + alpha - 1.0) * (k + beta - 1.0) * two_k_ab;
        let next = ((a2 + a3 * z) * curr - a4 * prev) / a1;
        prev = curr;
        curr = next;
    }
    curr
}

fn recurrence_degenerate(n: usize, ab: f64) -> bool {
    (2..=n).any(|k| {
        let k = k as f64;
        (k + ab).abs() < 0.05 || (2.0 * k + ab - 2.0).abs() < 0.05
    })
}

/// `P_n = Σ_k C(n+α, n-k) C(n+β, k) ((z-1)/2)^k ((z+1)/2)^(n-k)` with
/// generalized binomial coefficients.
fn jacobi_binomial_sum(p: JacobiParams, z: f64) -> f64 {
    let JacobiParams { n, alpha, beta } = p;
    let nf = n as f64;
    let zm = 0.5 * (z - 1.0);
    let zp = 0.5 * (z + 1.0);
    (0..=n)
        .map(|k| {
            binomial(nf + alpha, n - k)
                * binomial(nf + beta, k)
                * zm.powi(k as i32)
                * zp.powi((n - k) as i32)
        })
        .sum()
}

fn binomial(top: f64, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, j| acc * (top - j as f64) / (j as f64 + 1.0))
}

/// Non-regularized incomplete beta `B(z; s, w) = ∫_0^z u^(s-1) (1-u)^(w-1) du`.
///
/// Requires `0 < z < 1` and `s > 0`; `w` may be any real. The continued
/// fraction is evaluated directly when it converges fast, otherwise (for
/// `w > 0`) through `B(s, w) - B(1 - z; w, s)`.
pub fn incomplete_beta(z: f64, s: f64, w: f64, ctl: SeriesControl) -> Result<f64> {
    if !(z > 0.0 && z < 1.0) {
        return Err(Error::Domain(format!("incomplete beta needs 0 < z < 1, got {z}")));
    }
    if !(s > 0.0) || !w.is_finite() {
        return Err(Error::Domain(format!(
            "incomplete beta integral diverges at 0 for s = {s}"
        )));
    }
    if w > 0.0 && z > (s + 1.0) / (s + w + 2.0) {
        let complete = (ln_gamma(s) + ln_gamma(w) - ln_gamma(s + w)).exp();
        let tail = beta_front(1.0 - z, w, s) * beta_cf(1.0 - z, w, s, ctl)?;
        Ok(complete - tail)
    } else {
        Ok(beta_front(z, s, w) * beta_cf(z, s, w, ctl)?)
    }
}

fn beta_front(z: f64, s: f64, w: f64) -> f64 {
    (s * z.ln() + w * (1.0 - z).ln()).exp() / s
}

/// Modified Lentz evaluation of the incomplete beta continued fraction.
fn beta_cf(z: f64, s: f64, w: f64, ctl: SeriesControl) -> Result<f64> {
    const TINY: f64 = 1e-300;
    let tol = ctl.rel_tol.max(f64::EPSILON);
    let mut c = 1.0;
    let mut d = 1.0 - (s + w) * z / (s + 1.0);
    if d.abs() < TINY {
        d = TINY;
    }
    d = 1.0 / d;
    let mut h = d;
    for m in 1..=ctl.max_terms {
        let mf = m as f64;
        let m2 = 2.0 * mf;
        let even = mf * (w - mf) * z / ((s + m2 - 1.0) * (s + m2));
        d = 1.0 + even * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = 1.0 + even / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        h *= d * c;

        let odd = -(s + mf) * (s + w + mf) * z / ((s + m2) * (s + m2 + 1.0));
        d = 1.0 + odd * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = 1.0 + odd / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let del = d * c;
        h *= del;
        if (del - 1.0).abs() < tol || (h * (del - 1.0)).abs() < ctl.abs_tol {
            return Ok(h);
        }
    }
    Err(Error::NonConvergence {
        what: "incomplete beta continued fraction",
        terms: ctl.max_terms,
    })
}

/// Appell `F1(a; b1, b2; c; x, y) = Σ_{m,n} (a)_{m+n} (b1)_m (b2)_n / ((c)_{m+n} m! n!) x^m y^n`.
///
/// Summed one anti-diagonal `m + n = d` at a time; `max_terms` bounds the
/// number of diagonals. Stops once three consecutive diagonals fall below
/// the tolerance.
pub fn appell_f1(a: f64, b1: f64, b2: f64, c: f64, x: f64, y: f64, ctl: SeriesControl) -> Result<f64> {
    if !(x.abs() < 1.0 && y.abs() < 1.0) {
        return Err(Error::Domain(format!(
            "Appell F1 series needs |x| < 1 and |y| < 1, got ({x}, {y})"
        )));
    }
    if c <= 0.0 && c.fract() == 0.0 {
        return Err(Error::Domain(format!("Appell F1 undefined for c = {c}")));
    }

    // diag[m] holds the (m, d - m) term of the current diagonal
    let mut diag = vec![1.0];
    let mut sum = 1.0;
    let mut quiet = 0;
    for d in 1..=ctl.max_terms {
        let df = d as f64;
        let common = (a + df - 1.0) / (c + df - 1.0);
        let mut next = Vec::with_capacity(d + 1);
        for (m, &t) in diag.iter().enumerate() {
            let n = (d - 1 - m) as f64;
            next.push(t * common * (b2 + n) / (n + 1.0) * y);
        }
        let last = diag[d - 1] * common * (b1 + df - 1.0) / df * x;
        next.push(last);

        let diag_sum: f64 = next.iter().sum();
        let diag_max = next.iter().fold(0.0_f64, |acc, t| acc.max(t.abs()));
        sum += diag_sum;
        if !sum.is_finite() {
            return Err(Error::NonConvergence {
                what: "Appell F1 series (overflow)",
                terms: d,
            });
        }
        if diag_max <= ctl.threshold(sum) {
            quiet += 1;
            if quiet >= 3 {
                return Ok(sum);
            }
        } else {
            quiet = 0;
        }
        diag = next;
    }
    Err(Error::NonConvergence {
        what: "Appell F1 series",
        terms: ctl.max_terms,
    })
}

/// Derivative order for [`numeric_derivative`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DerivOrder {
    First,
    Second,
}

/// Three-point central difference for `f'` or `f''`; truncation error is `O(h²)`.
pub fn numeric_derivative<F>(f: F, x: f64, order: DerivOrder, h: f64) -> f64
where
    F: Fn(f64) -> f64,
{
    match order {
        DerivOrder::First => (f(x + h) - f(x - h)) / (2.0 * h),
        DerivOrder::Second => (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn jacobi_low_degrees() {
        assert_eq!(jacobi_poly(JacobiParams::new(0, 3.3, -7.0), 0.3), 1.0);
        assert!((jacobi_poly(JacobiParams::new(1, 2.0, 1.0), 0.0) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn jacobi_legendre_special_case() {
        // P_2^(0,0) = (3z^2 - 1)/2
        let z = 0.37;
        let v = jacobi_poly(JacobiParams::new(2, 0.0, 0.0), z);
        assert!((v - 0.5 * (3.0 * z * z - 1.0)).abs() < 1e-15);
    }

    #[test]
    fn jacobi_degenerate_and_near_degenerate_pairs() {
        // α + β = -2 trips the recurrence at k = 2
        let z = 0.4;
        for alpha in [-0.5, -0.5 + 1e-7, -0.5 + 1e-3, -0.5 + 0.06] {
            let v = jacobi_poly(JacobiParams::new(4, alpha, -1.5), z);
            let oracle = crate::reference::jacobi_hypergeometric(4, alpha, -1.5, z);
            assert!((v - oracle).abs() < 1e-12, "{alpha}: {v} vs {oracle}");
        }
    }

    #[test]
    fn jacobi_alpha_minus_one_vanishes_at_one() {
        for n in 1..6 {
            let v = jacobi_poly(JacobiParams::new(n, -1.0, 0.7), 1.0);
            assert!(v.abs() < 1e-13, "n={n}: {v}");
        }
    }

    #[test]
    fn incomplete_beta_examples() {
        let ctl = SeriesControl::default();
        assert!((incomplete_beta(0.7, 1.0, 1.0, ctl).unwrap() - 0.7).abs() < 1e-14);
        let v = incomplete_beta(0.25, 0.5, 0.5, ctl).unwrap();
        assert!((v - PI / 3.0).abs() < 1e-13, "{v}");
        let v = incomplete_beta(1.0 - 1e-12, 2.0, 3.0, ctl).unwrap();
        assert!((v - 1.0 / 12.0).abs() < 1e-12, "{v}");
    }

    #[test]
    fn incomplete_beta_negative_w() {
        // w = 0: ∫_0^z u^(s-1)/(1-u) du; for s = 1 this is -ln(1-z)
        let v = incomplete_beta(0.6, 1.0, 0.0, SeriesControl::default()).unwrap();
        assert!((v + (0.4_f64).ln()).abs() < 1e-13, "{v}");
    }

    #[test]
    fn incomplete_beta_rejects_bad_domain() {
        let ctl = SeriesControl::default();
        assert!(matches!(incomplete_beta(0.0, 1.0, 1.0, ctl), Err(Error::Domain(_))));
        assert!(matches!(incomplete_beta(1.0, 1.0, 1.0, ctl), Err(Error::Domain(_))));
        assert!(matches!(incomplete_beta(0.5, -0.2, 1.0, ctl), Err(Error::Domain(_))));
        assert!(matches!(incomplete_beta(0.5, 0.0, 1.0, ctl), Err(Error::Domain(_))));
    }

    #[test]
    fn incomplete_beta_reports_exhaustion() {
        let ctl = SeriesControl::new(2, 0.0, 1e-16).unwrap();
        assert!(matches!(
            incomplete_beta(0.3, 2.5, 0.5, ctl),
            Err(Error::NonConvergence { .. })
        ));
    }

    #[test]
    fn appell_origin_and_domain() {
        let ctl = SeriesControl::default();
        assert_eq!(appell_f1(0.5, 1.0, 2.0, 3.0, 0.0, 0.0, ctl).unwrap(), 1.0);
        assert!(matches!(
            appell_f1(0.5, 1.0, 2.0, 3.0, 1.0, 0.0, ctl),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            appell_f1(0.5, 1.0, 2.0, -2.0, 0.1, 0.1, ctl),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn appell_terminates_for_negative_integer_b() {
        // b1 = b2 = -1, a = c: F1 = 1 - x - y + (a+1)/(c+1)... reduces to
        // (1 - x)(1 - y) when a = c
        let v = appell_f1(1.5, -1.0, -1.0, 1.5, 0.3, 0.6, SeriesControl::default()).unwrap();
        assert!((v - 0.7 * 0.4).abs() < 1e-15, "{v}");
    }

    #[test]
    fn appell_exhaustion() {
        let ctl = SeriesControl::new(5, 0.0, 1e-15).unwrap();
        assert!(matches!(
            appell_f1(0.5, 0.25, 1.5, 2.0, 0.9, 0.9, ctl),
            Err(Error::NonConvergence { .. })
        ));
    }

    #[test]
    fn derivative_examples() {
        let d = numeric_derivative(|x| x, 1.0, DerivOrder::First, 1e-4);
        assert!((d - 1.0).abs() < 1e-9);
        let d = numeric_derivative(f64::cos, PI / 3.0, DerivOrder::First, 1e-4);
        assert!((d + (PI / 3.0).sin()).abs() < 1e-7);
        let d = numeric_derivative(f64::cos, PI / 3.0, DerivOrder::Second, 1e-3);
        assert!((d + (PI / 3.0).cos()).abs() < 1e-5);
    }

    #[test]
    fn series_control_invariants() {
        assert!(SeriesControl::new(0, 1e-10, 0.0).is_err());
        assert!(SeriesControl::new(10, 0.0, 0.0).is_err());
        assert!(SeriesControl::new(10, -1.0, 1e-3).is_err());
        assert!(SeriesControl::new(10, 0.0, 1e-3).is_ok());
    }
}
