//! Beta and Appell tails: superpotentials whose `V-` stays Pöschl–Teller
//! while `V+` picks up a non-trivial correction.

use torus_susy::geometry::TorusGeometry;
use torus_susy::susy::{
    partner_potentials, solve_appell_conditions, susy_residual, AppellReading, Branch, DerivativeMode, PtParams,
    SuperpotentialSpec,
};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let grid: Vec<f64> = (0..100).map(|i| 0.2 + 2.3 * i as f64 / 99.0).collect();

    let beta = SuperpotentialSpec::beta_tail(PtParams::new(0.3, 0.1), 1.0, TorusGeometry::new(1.0, 1.0)?)?;
    let (rm, rp) = susy_residual(&beta, &grid, DerivativeMode::FiniteDifference { h: 1e-5 })?;
    println!("beta tail: finite-difference SUSY residuals {rm:.2e}, {rp:.2e}");
    if let Err(e) = SuperpotentialSpec::beta_tail(PtParams::new(-2.0, 0.5), 1.0, TorusGeometry::new(1.0, 1.0)?) {
        println!("beta tail with A < -|B|: {e}");
    }

    let sol = solve_appell_conditions(1.0, 2.0, Branch::Plus, AppellReading::Corrected)?;
    println!("Appell conditions: A = {}, B = {}, c = {}", sol.pt.a, sol.pt.b, sol.geom.c);
    let appell = SuperpotentialSpec::appell_tail(sol.pt, sol.lambda, -1.0, sol.geom)?;
    let (rm, rp) = susy_residual(&appell, &grid, DerivativeMode::FiniteDifference { h: 1e-5 })?;
    println!("Appell tail: finite-difference SUSY residuals {rm:.2e}, {rp:.2e}");
    for x in [0.5, 1.0, 2.0] {
        let (vm, vp) = partner_potentials(&appell, x)?;
        let pt = sol.pt.minus_coefficients().eval(x);
        println!("  x={x}: V- = {vm:.10} (PT {pt:.10}), V+ = {vp:.6}");
    }
    match solve_appell_conditions(1.0, 2.0, Branch::Plus, AppellReading::Printed) {
        Ok(s) => println!("printed reading gives ratio {:.6} instead of 1", s.ratio),
        Err(e) => println!("printed reading: {e}"),
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
