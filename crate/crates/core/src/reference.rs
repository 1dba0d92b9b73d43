//! Brute-force reference evaluators.
//!
//! These are deliberately independent of the production algorithms in
//! [`crate::special`] and [`crate::oracle`]: different formulas, different
//! summation orders, different linear algebra. The verify suite and the test
//! targets compare the two sides.

use nalgebra::{DMatrix, SymmetricEigen};

/// Tanh-sinh (double exponential) quadrature of `f` over `[lo, hi]`.
///
/// Tolerates integrable endpoint singularities. `f` receives the abscissa
/// together with its distances to `lo` and `hi`, computed without
/// cancellation, so integrands like `u^(s-1)` stay accurate near the ends.
/// Returns `(value, error_estimate)`.
pub fn tanh_sinh<F>(f: F, lo: f64, hi: f64, tol: f64) -> (f64, f64)
where
    F: Fn(f64, f64, f64) -> f64,
{
    use std::f64::consts::FRAC_PI_2;
    let half = 0.5 * (hi - lo);
    let t_max = 6.5;
    let mut step = 0.5;
    let node = |t: f64| -> Option<f64> {
        let s = FRAC_PI_2 * t.sinh();
        let cosh_s = s.cosh();
        // 1 - tanh(s) and 1 + tanh(s) without cancellation
        let e = (-2.0 * s.abs()).exp();
        let small = 2.0 * e / (1.0 + e);
        let (d_lo, d_hi) = if s >= 0.0 {
            (half * (2.0 - small), half * small)
        } else {
            (half * small, half * (2.0 - small))
        };
        if d_lo <= 0.0 || d_hi <= 0.0 {
            return None;
        }
        let x = if d_lo < d_hi { lo + d_lo } else { hi - d_hi };
        if x <= lo || x >= hi {
            // the abscissa rounded onto an endpoint
            return None;
        }
        let w = FRAC_PI_2 * t.cosh() / (cosh_s * cosh_s);
        let v = f(x, d_lo, d_hi);
        if v.is_finite() {
            Some(half * w * v)
        } else if d_lo.min(d_hi) < 1e-100 {
            // overflow from underflowed factors this close to an end; the node's weight is negligible
            None
        } else {
            Some(f64::NAN)
        }
    };

    let mut sum = node(0.0).unwrap_or(0.0);
    let mut k = 1;
    while k as f64 * step <= t_max {
        let t = k as f64 * step;
        sum += node(t).unwrap_or(0.0) + node(-t).unwrap_or(0.0);
        k += 1;
    }
    let mut estimate = sum * step;
    let mut err = f64::INFINITY;
    for _level in 0..10 {
        step *= 0.5;
        let mut k = 1;
        while k as f64 * step <= t_max {
            let t = k as f64 * step;
            sum += node(t).unwrap_or(0.0) + node(-t).unwrap_or(0.0);
            k += 2;
        }
        let next = sum * step;
        err = (next - estimate).abs();
        estimate = next;
        if err <= tol * estimate.abs().max(1e-300) || !estimate.is_finite() {
            break;
        }
    }
    (estimate, err)
}

/// `(x)_k`, the rising factorial.
pub fn pochhammer(x: f64, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, j| acc * (x + j as f64))
}

/// Jacobi polynomial from its terminating Gauss series in `(1 - z)/2`.
pub fn jacobi_hypergeometric(n: usize, alpha: f64, beta: f64, z: f64) -> f64 {
    let t = 0.5 * (1.0 - z);
    let n_fact = pochhammer(1.0, n);
    (0..=n)
        .map(|k| {
            let num = pochhammer(alpha + 1.0 + k as f64, n - k)
                * pochhammer(-(n as f64), k)
                * pochhammer(n as f64 + alpha + beta + 1.0, k);
            num / (n_fact * pochhammer(1.0, k)) * t.powi(k as i32)
        })
        .sum()
}

/// Gauss `2F1(a, b; c; z)` by direct summation, `|z| < 1`.
pub fn hyp2f1(a: f64, b: f64, c: f64, z: f64) -> f64 {
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut quiet = 0;
    for k in 0..200_000 {
        let kf = k as f64;
        term *= (a + kf) * (b + kf) / ((c + kf) * (kf + 1.0)) * z;
        sum += term;
        if term == 0.0 || term.abs() <= 1e-17 * sum.abs() {
            quiet += 1;
            if quiet >= 3 {
                break;
            }
        } else {
            quiet = 0;
        }
    }
    sum
}

/// Appell `F1` as a single series of Gauss functions:
/// `Σ_m (a)_m (b1)_m / ((c)_m m!) x^m 2F1(a+m, b2; c+m; y)`.
pub fn appell_f1_by_gauss(a: f64, b1: f64, b2: f64, c: f64, x: f64, y: f64) -> f64 {
    let mut coef = 1.0;
    let mut sum = 0.0;
    let mut quiet = 0;
    for m in 0..100_000 {
        let mf = m as f64;
        let term = coef * hyp2f1(a + mf, b2, c + mf, y);
        sum += term;
        if term == 0.0 || term.abs() <= 1e-17 * sum.abs() {
            quiet += 1;
            if quiet >= 3 {
                break;
            }
        } else {
            quiet = 0;
        }
        coef *= (a + mf) * (b1 + mf) / ((c + mf) * (mf + 1.0)) * x;
    }
    sum
}

/// Appell `F1` summed over the square `0 <= m, n < terms` with every
/// coefficient built from Pochhammer products.
pub fn appell_f1_rectangular(a: f64, b1: f64, b2: f64, c: f64, x: f64, y: f64, terms: usize) -> f64 {
    let mut sum = 0.0;
    for m in 0..terms {
        let xm = x.powi(m as i32) * pochhammer(b1, m) / pochhammer(1.0, m);
        if xm == 0.0 {
            continue;
        }
        for n in 0..terms {
            let yn = y.powi(n as i32) * pochhammer(b2, n) / pochhammer(1.0, n);
            sum += pochhammer(a, m + n) / pochhammer(c, m + n) * xm * yn;
        }
    }
    sum
}

/// All eigenvalues, ascending, of the symmetric tridiagonal matrix with the
/// given diagonal and off-diagonal, by dense diagonalization.
pub fn dense_tridiagonal_eigenvalues(diag: &[f64], off: &[f64]) -> Vec<f64> {
    let n = diag.len();
    let m = DMatrix::from_fn(n, n, |i, j| {
        if i == j {
            diag[i]
        } else if i + 1 == j {
            off[i]
        } else if j + 1 == i {
            off[j]
        } else {
            0.0
        }
    });
    let mut ev: Vec<f64> = SymmetricEigen::new(m).eigenvalues.iter().copied().collect();
    ev.sort_by(|a, b| a.total_cmp(b));
    ev
}

/// Composite trapezoid rule on uniformly spaced samples.
pub fn trapezoid(values: &[f64], h: f64) -> f64 {
    match values.len() {
        0 | 1 => 0.0,
        n => h * (values[1..n - 1].iter().sum::<f64>() + 0.5 * (values[0] + values[n - 1])),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn tanh_sinh_handles_endpoint_singularity() {
        // ∫_0^1 u^(-1/2) du = 2
        let (v, _) = tanh_sinh(|_, d_lo, _| d_lo.powf(-0.5), 0.0, 1.0, 1e-14);
        assert!((v - 2.0).abs() < 1e-12, "{v}");
        let (v, _) = tanh_sinh(|x, _, _| x.sin(), 0.0, PI, 1e-14);
        assert!((v - 2.0).abs() < 1e-13, "{v}");
    }

    #[test]
    fn gauss_series_closed_forms() {
        // 2F1(1, 1; 2; z) = -ln(1 - z)/z
        let z = 0.6;
        assert!((hyp2f1(1.0, 1.0, 2.0, z) + (1.0 - z).ln() / z).abs() < 1e-14);
    }

    #[test]
    fn jacobi_series_matches_legendre() {
        let z = -0.3;
        let p3 = 0.5 * (5.0 * z * z * z - 3.0 * z);
        assert!((jacobi_hypergeometric(3, 0.0, 0.0, z) - p3).abs() < 1e-14);
    }

    #[test]
    fn two_appell_oracles_agree() {
        let a = appell_f1_by_gauss(0.5, 0.25, 1.5, 2.0, 0.3, 0.2);
        let b = appell_f1_rectangular(0.5, 0.25, 1.5, 2.0, 0.3, 0.2, 80);
        assert!((a - b).abs() < 1e-13, "{a} vs {b}");
    }

    #[test]
    fn dense_eigen_small() {
        let ev = dense_tridiagonal_eigenvalues(&[2.0, 2.0], &[-1.0]);
        assert!((ev[0] - 1.0).abs() < 1e-14 && (ev[1] - 3.0).abs() < 1e-14);
    }

    #[test]
    fn trapezoid_is_exact_on_lines() {
        let v: Vec<f64> = (0..11).map(|i| 1.0 + 0.1 * i as f64).collect();
        assert!((trapezoid(&v, 0.1) - 1.5).abs() < 1e-15);
    }
}
