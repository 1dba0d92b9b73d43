//! Finite-difference eigensolver for `-F'' + V F = ε F` with Dirichlet ends.
//!
//! The grid has `n_points` nodes including both endpoints; the unknowns are
//! the `n_points - 2` interior values. Eigenvalues come from Sturm-sequence
//! bisection and eigenvectors from inverse iteration.

use crate::error::{Error, Result};
use serde::Serialize;
use std::collections::BTreeMap;
use std::f64::consts::PI;

pub const MIN_POINTS: usize = 64;

/// Uniform grid on `[x_lo, x_hi] ⊂ (0, π)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Grid1D {
    pub x_lo: f64,
    pub x_hi: f64,
    pub n_points: usize,
}

impl Grid1D {
    pub fn new(x_lo: f64, x_hi: f64, n_points: usize) -> Result<Self> {
        if !(x_lo > 0.0 && x_lo < x_hi && x_hi < PI) {
            return Err(Error::InvalidParameter(format!(
                "grid needs 0 < x_lo < x_hi < pi, got [{x_lo}, {x_hi}]"
            )));
        }
        if n_points < MIN_POINTS {
            return Err(Error::GridTooCoarse {
                points: n_points,
                required: MIN_POINTS,
            });
        }
        Ok(Self { x_lo, x_hi, n_points })
    }

    /// Symmetric grid `(ε₀, π - ε₀)`.
    pub fn symmetric(eps0: f64, n_points: usize) -> Result<Self> {
        Self::new(eps0, PI - eps0, n_points)
    }

    pub fn spacing(&self) -> f64 {
        (self.x_hi - self.x_lo) / (self.n_points - 1) as f64
    }

    pub fn node(&self, i: usize) -> f64 {
        if i + 1 == self.n_points {
            self.x_hi
        } else {
            self.x_lo + i as f64 * self.spacing()
        }
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..self.n_points).map(|i| self.node(i)).collect()
    }

    /// Samples `f` at every node.
    pub fn sample<F: Fn(f64) -> f64>(&self, f: F) -> Vec<f64> {
        (0..self.n_points).map(|i| f(self.node(i))).collect()
    }

    /// Samples a fallible `f` at every node.
    pub fn try_sample<F: Fn(f64) -> Result<f64>>(&self, f: F) -> Result<Vec<f64>> {
        (0..self.n_points).map(|i| f(self.node(i))).collect()
    }
}

/// Symmetric tridiagonal matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Tridiagonal {
    pub diag: Vec<f64>,
    pub off: Vec<f64>,
}

impl Tridiagonal {
    pub fn new(diag: Vec<f64>, off: Vec<f64>) -> Result<Self> {
        if diag.is_empty() || off.len() + 1 != diag.len() {
            return Err(Error::InvalidParameter(format!(
                "tridiagonal needs off.len() + 1 == diag.len() >= 1, got {} and {}",
                off.len(),
                diag.len()
            )));
        }
        Ok(Self { diag, off })
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn matvec(&self, v: &[f64]) -> Vec<f64> {
        let n = self.dim();
        (0..n)
            .map(|i| {
                let mut s = self.diag[i] * v[i];
                if i > 0 {
                    s += self.off[i - 1] * v[i - 1];
                }
                if i + 1 < n {
                    s += self.off[i] * v[i + 1];
                }
                s
            })
            .collect()
    }

    /// Number of eigenvalues strictly below `x`, from the pivots of `M - x I = LDLᵀ`.
    pub fn count_below(&self, x: f64) -> usize {
        let mut count = 0;
        let mut d = 1.0;
        for i in 0..self.dim() {
            let e2 = if i == 0 { 0.0 } else { self.off[i - 1] * self.off[i - 1] };
            d = self.diag[i] - x - if i == 0 { 0.0 } else { e2 / d };
            if d == 0.0 {
                d = -f64::EPSILON * (self.diag[i].abs() + x.abs()).max(f64::MIN_POSITIVE);
            }
            if d < 0.0 {
                count += 1;
            }
        }
        count
    }

    fn gershgorin(&self) -> (f64, f64) {
        let n = self.dim();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let r = if i > 0 { self.off[i - 1].abs() } else { 0.0 } + if i + 1 < n { self.off[i].abs() } else { 0.0 };
            lo = lo.min(self.diag[i] - r);
            hi = hi.max(self.diag[i] + r);
        }
        (lo, hi)
    }
}

/// `-d²/dx² + V` on the interior nodes: diagonal `2/h² + V(xᵢ)`, off-diagonal `-1/h²`.
///
/// `v` holds one value per grid node; the two endpoint values are ignored.
pub fn build_hamiltonian(v: &[f64], grid: &Grid1D) -> Result<Tridiagonal> {
    if v.len() != grid.n_points {
        return Err(Error::InvalidParameter(format!(
            "potential has {} samples for a {}-point grid",
            v.len(),
            grid.n_points
        )));
    }
    let h = grid.spacing();
    let inv_h2 = 1.0 / (h * h);
    let mut diag = Vec::with_capacity(grid.n_points - 2);
    for (i, &vi) in v.iter().enumerate().take(grid.n_points - 1).skip(1) {
        if !vi.is_finite() {
            return Err(Error::NonFinitePotential { index: i, x: grid.node(i) });
        }
        diag.push(2.0 * inv_h2 + vi);
    }
    let off = vec![-inv_h2; diag.len() - 1];
    Tridiagonal::new(diag, off)
}

const BISECTION_CAP: usize = 400;

/// The `m` smallest eigenvalues, ascending.
pub fn lowest_eigenvalues(mat: &Tridiagonal, m: usize) -> Result<Vec<f64>> {
    if m > mat.dim() {
        return Err(Error::InvalidParameter(format!(
            "requested {m} eigenvalues of a {}-dimensional matrix",
            mat.dim()
        )));
    }
    let (glo, ghi) = mat.gershgorin();
    let pad = 1e-12 * (glo.abs().max(ghi.abs())).max(1.0);
    let (glo, ghi) = (glo - pad, ghi + pad);
    let mut out = Vec::with_capacity(m);
    for k in 0..m {
        // smallest x with count_below(x) > k
        let mut lo = out.last().copied().unwrap_or(glo).min(ghi);
        let mut hi = ghi;
        let mut converged = false;
        for _ in 0..BISECTION_CAP {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi || hi - lo <= 2.0 * f64::EPSILON * lo.abs().max(hi.abs()) {
                converged = true;
                break;
            }
            if mat.count_below(mid) > k {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        if !converged {
            return Err(Error::ConvergenceFailure(format!(
                "bisection for eigenvalue {k} hit the {BISECTION_CAP}-step cap"
            )));
        }
        out.push(0.5 * (lo + hi));
    }
    Ok(out)
}

/// Solves `(M - σ I) x = b` by Gaussian elimination with partial pivoting.
fn shifted_solve(mat: &Tridiagonal, sigma: f64, b: &[f64]) -> Vec<f64> {
    let n = mat.dim();
    // rows hold (sub, diag, sup, sup2) after elimination
    let mut d: Vec<f64> = mat.diag.iter().map(|v| v - sigma).collect();
    let mut up: Vec<f64> = mat.off.clone();
    up.push(0.0);
    let mut up2 = vec![0.0; n];
    let mut lo: Vec<f64> = mat.off.clone();
    let mut rhs = b.to_vec();
    let tiny = f64::EPSILON * mat.diag.iter().fold(1.0_f64, |a, v| a.max(v.abs()));
    for i in 0..n.saturating_sub(1) {
        if lo[i].abs() > d[i].abs() {
            // swap rows i and i+1
            let (di, ui, u2i) = (d[i], up[i], up2[i]);
            d[i] = lo[i];
            up[i] = d[i + 1];
            up2[i] = up[i + 1];
            lo[i] = di;
            d[i + 1] = ui;
            up[i + 1] = u2i;
            rhs.swap(i, i + 1);
        }
        if d[i] == 0.0 {
            d[i] = tiny;
        }
        let f = lo[i] / d[i];
        d[i + 1] -= f * up[i];
        up[i + 1] -= f * up2[i];
        rhs[i + 1] -= f * rhs[i];
    }
    if d[n - 1] == 0.0 {
        d[n - 1] = tiny;
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let mut s = rhs[i];
        if i + 1 < n {
            s -= up[i] * x[i + 1];
        }
        if i + 2 < n {
            s -= up2[i] * x[i + 2];
        }
        x[i] = s / d[i];
    }
    x
}

fn normalize(v: &mut [f64]) -> f64 {
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm > 0.0 {
        v.iter_mut().for_each(|x| *x /= norm);
    }
    norm
}

/// The `m` lowest eigenpairs. Vectors are returned on the full grid (zero at
/// both endpoints) with unit Euclidean norm and the first significant
/// component positive.
pub fn eigenpairs(mat: &Tridiagonal, m: usize, grid: &Grid1D) -> Result<Vec<(f64, Vec<f64>)>> {
    if mat.dim() + 2 != grid.n_points {
        return Err(Error::InvalidParameter(format!(
            "matrix of dimension {} does not match a {}-point grid",
            mat.dim(),
            grid.n_points
        )));
    }
    let values = lowest_eigenvalues(mat, m)?;
    let n = mat.dim();
    let scale = mat.diag.iter().fold(1.0_f64, |a, v| a.max(v.abs()));
    let mut vectors: Vec<Vec<f64>> = Vec::with_capacity(m);
    for &lam in &values {
        let sigma = lam + 1e3 * f64::EPSILON * scale;
        let mut v: Vec<f64> = (0..n).map(|i| 1.0 + 0.1 * ((i * 7919 % 104_729) as f64 / 104_729.0)).collect();
        normalize(&mut v);
        for _ in 0..4 {
            v = shifted_solve(mat, sigma, &v);
            for prev in &vectors {
                let dot: f64 = prev.iter().zip(&v).map(|(a, b)| a * b).sum();
                v.iter_mut().zip(prev).for_each(|(x, p)| *x -= dot * p);
            }
            if normalize(&mut v) == 0.0 || v.iter().any(|x| !x.is_finite()) {
                return Err(Error::ConvergenceFailure("inverse iteration produced a null vector".into()));
            }
        }
        let peak = v.iter().fold(0.0_f64, |a, x| a.max(x.abs()));
        if let Some(first) = v.iter().find(|x| x.abs() > 1e-8 * peak) {
            if *first < 0.0 {
                v.iter_mut().for_each(|x| *x = -*x);
            }
        }
        vectors.push(v);
    }
    Ok(values
        .into_iter()
        .zip(vectors)
        .map(|(lam, v)| {
            let mut full = Vec::with_capacity(n + 2);
            full.push(0.0);
            full.extend(v);
            full.push(0.0);
            (lam, full)
        })
        .collect())
}

/// Lowest `m` eigenvalues of `-d²/dx² + V` on `grid`.
pub fn solve_potential(v: &[f64], grid: &Grid1D, m: usize) -> Result<Vec<f64>> {
    lowest_eigenvalues(&build_hamiltonian(v, grid)?, m)
}

/// Default margin above `-1/4` for [`friedrichs_gate`].
pub const FRIEDRICHS_MARGIN: f64 = 1e-3;

/// Rejects potentials whose `1/x²` strength near either singular endpoint
/// falls below `-1/4 + margin`. The strength is estimated at the first and
/// last interior nodes as `V(x)·x²` and `V(x)·(π - x)²`.
pub fn friedrichs_gate(v: &[f64], grid: &Grid1D, margin: f64) -> Result<()> {
    let n = grid.n_points;
    let (x1, xn) = (grid.node(1), grid.node(n - 2));
    let left = v[1] * x1 * x1;
    let right = v[n - 2] * (PI - xn) * (PI - xn);
    let floor = -0.25 + margin;
    if left < floor || right < floor {
        return Err(Error::IllPosed(format!(
            "endpoint strengths ({left:.6}, {right:.6}) fall below {floor}; the operator is not limit-point"
        )));
    }
    Ok(())
}

/// One compared level of an [`EigenReport`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LevelRow {
    pub n: usize,
    pub eps_analytic: f64,
    pub eps_numeric: f64,
    pub abs_err: f64,
    pub rel_err: f64,
}

/// Analytic against numeric eigenvalues.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EigenReport {
    pub case: String,
    pub params: BTreeMap<String, f64>,
    pub levels: Vec<LevelRow>,
    pub max_rel_err: f64,
    pub pass: bool,
}

/// Levels with `|ε| < ZERO_LEVEL` are judged by absolute error.
pub const ZERO_LEVEL: f64 = 1e-9;

impl EigenReport {
    /// Pairs `expected[i]` with `numeric[i]`. A level passes if its relative
    /// error is within `rel_tol`, or, for a zero expected value, if its
    /// absolute error is within `abs_tol`.
    pub fn compare(
        case: impl Into<String>,
        params: BTreeMap<String, f64>,
        expected: &[f64],
        numeric: &[f64],
        rel_tol: f64,
        abs_tol: f64,
    ) -> Self {
        let mut levels = Vec::with_capacity(expected.len());
        let mut pass = expected.len() == numeric.len();
        let mut max_rel_err = 0.0_f64;
        for (n, (&e, &num)) in expected.iter().zip(numeric).enumerate() {
            let abs_err = (num - e).abs();
            let zero = e.abs() < ZERO_LEVEL;
            let rel_err = if zero { abs_err } else { abs_err / e.abs() };
            if zero {
                pass &= abs_err <= abs_tol;
            } else {
                pass &= rel_err <= rel_tol;
                max_rel_err = max_rel_err.max(rel_err);
            }
            levels.push(LevelRow {
                n,
                eps_analytic: e,
                eps_numeric: num,
                abs_err,
                rel_err,
            });
        }
        Self {
            case: case.into(),
            params,
            levels,
            max_rel_err,
            pass,
        }
    }
}

/// Compares `spec(V₊)[0..m]` with `spec(V₋)[1..m+1]`.
pub fn isospectral_check(v_minus: &[f64], v_plus: &[f64], grid: &Grid1D, m: usize, tol: f64) -> Result<EigenReport> {
    let minus = solve_potential(v_minus, grid, m + 1)?;
    let plus = solve_potential(v_plus, grid, m)?;
    let mut params = BTreeMap::new();
    params.insert("levels".into(), m as f64);
    params.insert("tol".into(), tol);
    Ok(EigenReport::compare("isospectral", params, &minus[1..], &plus, tol, tol))
}
