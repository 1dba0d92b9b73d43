//! Spinor components on the horn torus and the two Jacobi orders of the
//! second component.

use std::f64::consts::PI;
use torus_susy::geometry::TorusGeometry;
use torus_susy::oracle::Grid1D;
use torus_susy::susy::{component2_report, l2_normalize, node_count, spinor_psi1, PtParams};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let geom = TorusGeometry::new(1.0, 1.0)?;
    let pt = PtParams::new(-2.0, 0.5);
    let grid = Grid1D::symmetric(0.01, 801)?;
    for n in 0..4 {
        let norm = l2_normalize(|x| spinor_psi1(&pt, &geom, n, x).unwrap_or(f64::NAN), 0.0, PI)?;
        let samples = grid.try_sample(|x| spinor_psi1(&pt, &geom, n, x))?;
        println!("psi1 n={n}: norm constant {norm:.6}, sign changes {}", node_count(&samples));
    }

    let g = Grid1D::new(0.2, PI - 0.2, 401)?;
    for n in 0..3 {
        let r = component2_report(0.6, &geom, n, &g)?;
        println!(
            "psi2 n={n}: eps {:.4}, residual printed {:.2e} (refit {:.2e} at eps {:.4}), swapped {:.2e}, normalizable {}",
            r.eps, r.residual_printed, r.residual_printed_fit, r.eps_printed_fit, r.residual_swapped, r.probe.normalizable
        );
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
