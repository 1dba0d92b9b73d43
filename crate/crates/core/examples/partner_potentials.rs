//! Superpotential families, their partner potentials and the cancellation
//! conditions that remove the rational tail from `V-`.

use std::f64::consts::PI;
use torus_susy::susy::{
    partner_potentials, rational_numerator_minus, solve_equal_radii_conditions, susy_residual, Branch,
    DerivativeMode, PtParams, SuperpotentialSpec,
};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let pt = PtParams::new(-2.0, 0.5);
    let spec = SuperpotentialSpec::PureTrigPt(pt);
    let (vm, vp) = partner_potentials(&spec, PI / 2.0)?;
    println!("pure family at pi/2: V- = {vm}, V+ = {vp}, normalizable = {}", pt.normalizable());

    for (a, b, branch) in [(2.0, -1.5, Branch::Minus), (1.0, 0.5, Branch::Plus)] {
        let s = solve_equal_radii_conditions(a, b, branch)?;
        let worst = (1..50)
            .map(|i| PI * i as f64 / 50.0)
            .filter(|x| s.geom.radius(*x).abs() > 1e-3)
            .map(|x| rational_numerator_minus(&s.pt, s.lambda, &s.geom, x).abs())
            .fold(0.0_f64, f64::max);
        println!(
            "a={a}, B={b}, {branch:?}: A={}, lambda={}, c={}, max |N-| = {worst:.1e}",
            s.pt.a, s.lambda, s.geom.c
        );
    }
    match solve_equal_radii_conditions(1.0, 0.0, Branch::Plus) {
        Err(e) => println!("B = 0: {e}"),
        Ok(_) => println!("B = 0 unexpectedly solved"),
    }

    let grid: Vec<f64> = (0..200).map(|i| 0.2 + (PI - 0.4) * i as f64 / 199.0).collect();
    let (rm, rp) = susy_residual(&spec, &grid, DerivativeMode::Analytic)?;
    println!("analytic SUSY residuals: {rm:.2e}, {rp:.2e}");
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
