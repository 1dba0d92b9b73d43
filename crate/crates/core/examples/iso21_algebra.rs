//! The modified iso(2,1) realization: constraints, commutator closure, the
//! Casimir potential and its spectrum.

use std::f64::consts::PI;
use torus_susy::algebra::{
    algebra_spectrum, casimir_susy_offset, commutator_residual, constraint_residual_77, random_smooth_function,
    AlgebraParams, OperatorReading,
};
use torus_susy::oracle::Grid1D;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let p = AlgebraParams::closure(1.0, 2.0)?;
    println!("closure point: B1 = {}, mu = {}, K2 = {}, mu1 = {}", p.b1, p.mu, p.k2, p.mu1);

    let grid: Vec<f64> = (0..100).map(|i| 0.1 + 2.7 * i as f64 / 99.0).collect();
    println!("U constraint residual on the closure family: {:.3e}", constraint_residual_77(&p, &grid)?);

    let (mean, sd) = casimir_susy_offset(&p, &grid)?;
    let a = -p.mu - 0.5;
    println!("Casimir - V-: mean {mean:.12} (A^2 - 1/4 = {}), spread {sd:.1e}", a * a - 0.25);

    let mut free = p;
    free.k1 = 0.0;
    free.k2 = 0.0;
    for n in [512, 1024, 2048] {
        let g = Grid1D::new(0.3, PI - 0.3, n)?;
        let psi = random_smooth_function(&g, 5);
        let fixed = commutator_residual(&free, free.mu, &g, &psi, OperatorReading::SignCorrected)?;
        let printed = commutator_residual(&free, free.mu, &g, &psi, OperatorReading::Printed)?;
        let with_u = commutator_residual(&p, p.mu, &g, &psi, OperatorReading::SignCorrected)?;
        println!("N={n}: [J+,J-] + 2J3 residual {fixed:.2e} (printed signs {printed:.2e}, with U {with_u:.4})");
    }

    let levels: Vec<f64> = (0..5).map(|n| algebra_spectrum(&free, n).0).collect();
    println!("eps(n) at mu = {}: {levels:?}", free.mu);
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
