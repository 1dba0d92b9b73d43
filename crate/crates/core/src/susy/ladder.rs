use super::potentials::{superpotential_eval, SuperpotentialSpec};
use crate::error::{Error, Result};
use crate::oracle::{Grid1D, MIN_POINTS};

/// `Lower` applies `Â = d/dx + W`, `Raise` applies `Â† = -d/dx + W`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Lower,
    Raise,
}

/// Applies a ladder operator to grid samples `f`, one per node of `grid`.
/// `F'` is a central difference inside and a second-order one-sided
/// difference at the two ends.
pub fn ladder_apply(spec: &SuperpotentialSpec, f: &[f64], grid: &Grid1D, direction: Direction) -> Result<Vec<f64>> {
    let n = f.len();
    if n < MIN_POINTS {
        return Err(Error::GridTooCoarse {
            points: n,
            required: MIN_POINTS,
        });
    }
    if n != grid.n_points {
        return Err(Error::InvalidParameter(format!(
            "{n} samples for a {}-point grid",
            grid.n_points
        )));
    }
    let h = grid.spacing();
    let sign = match direction {
        Direction::Lower => 1.0,
        Direction::Raise => -1.0,
    };
    (0..n)
        .map(|i| {
            let d = if i == 0 {
                (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h)
            } else if i + 1 == n {
                (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * h)
            } else {
                (f[i + 1] - f[i - 1]) / (2.0 * h)
            };
            Ok(sign * d + superpotential_eval(spec, grid.node(i))? * f[i])
        })
        .collect()
}

/// `⟨u, v⟩ / (‖u‖ ‖v‖)` for equally weighted samples.
pub fn cosine_similarity(u: &[f64], v: &[f64]) -> f64 {
    let dot: f64 = u.iter().zip(v).map(|(a, b)| a * b).sum();
    let nu: f64 = u.iter().map(|a| a * a).sum::<f64>().sqrt();
    let nv: f64 = v.iter().map(|a| a * a).sum::<f64>().sqrt();
    dot / (nu * nv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::susy::{eigenfunction_minus, PtParams};

    #[test]
    fn annihilates_ground_state() {
        let pt = PtParams::new(-2.0, 0.5);
        let spec = SuperpotentialSpec::PureTrigPt(pt);
        let g = Grid1D::new(0.1, std::f64::consts::PI - 0.1, 20001).unwrap();
        let f0 = g.sample(|x| eigenfunction_minus(&pt, 0, x));
        let af = ladder_apply(&spec, &f0, &g, Direction::Lower).unwrap();
        let num = af.iter().fold(0.0_f64, |a, v| a.max(v.abs()));
        let den = f0.iter().fold(0.0_f64, |a, v| a.max(v.abs()));
        assert!(num / den < 1e-6, "{}", num / den);
    }

    #[test]
    fn too_coarse() {
        let spec = SuperpotentialSpec::PureTrigPt(PtParams::new(-2.0, 0.5));
        let g = Grid1D::new(0.1, 3.0, 64).unwrap();
        assert!(matches!(
            ladder_apply(&spec, &[1.0; 10], &g, Direction::Raise),
            Err(Error::GridTooCoarse { .. })
        ));
    }

    #[test]
    fn cosine_of_parallel_vectors() {
        assert!((cosine_similarity(&[1.0, 2.0], &[2.0, 4.0]) - 1.0).abs() < 1e-15);
    }
}
