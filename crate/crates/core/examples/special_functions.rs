//! Jacobi polynomials, incomplete beta and Appell F1 next to their brute-force references.

use torus_susy::reference::{appell_f1_by_gauss, jacobi_hypergeometric, tanh_sinh};
use torus_susy::special::{appell_f1, incomplete_beta, jacobi_poly, JacobiParams, SeriesControl};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let ctl = SeriesControl::default();

    println!("P_n^(1.5, 2.5)(0.3):");
    for n in 0..5 {
        let ours = jacobi_poly(JacobiParams::new(n, 1.5, 2.5), 0.3);
        let series = jacobi_hypergeometric(n, 1.5, 2.5, 0.3);
        println!("  n={n}  recurrence {ours:+.15}  series {series:+.15}");
    }
    // alpha + beta = -2 makes the three-term recurrence divide by zero
    let p = jacobi_poly(JacobiParams::new(3, -0.5, -1.5), 0.4);
    println!("degenerate pair (-0.5, -1.5): P_3(0.4) = {p:.15}");

    let (z, s, w) = (0.7, 2.5, -0.5);
    let cf = incomplete_beta(z, s, w, ctl)?;
    let (quad, _) = tanh_sinh(|u, d_lo, _| d_lo.powf(s - 1.0) * (1.0 - u).powf(w - 1.0), 0.0, z, 1e-14);
    println!("B({z}; {s}, {w}) = {cf:.15} (quadrature {quad:.15})");

    let f1 = appell_f1(0.5, 0.25, 1.5, 2.0, 0.3, 0.2, ctl)?;
    println!("F1(0.5; 0.25, 1.5; 2; 0.3, 0.2) = {f1:.15} (Gauss sum {:.15})", appell_f1_by_gauss(0.5, 0.25, 1.5, 2.0, 0.3, 0.2));
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
