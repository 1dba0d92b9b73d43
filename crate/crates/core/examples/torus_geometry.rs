//! Profile radius, Christoffel symbols, spin connection and the effective
//! potentials of both spinor components.

use std::f64::consts::PI;
use torus_susy::geometry::{
    christoffel, effective_coefficients, profile_radius, spin_connection_coeff, Component, ModeParams, TorusGeometry,
};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let geom = TorusGeometry::new(1.0, 2.0)?;
    println!("torus a = {}, c = {}, horn: {}", geom.a, geom.c, geom.equal_radii());
    println!("{:>8} {:>10} {:>10} {:>10} {:>10} {:>10} {:>10}", "x", "R", "R'", "G1_22", "G2_12", "s(x)", "U1-U2");
    let unit_velocity = |_: f64| (1.0, 0.0);
    for i in 1..6 {
        let x = PI * i as f64 / 6.0;
        let (r, r1, _) = profile_radius(&geom, x);
        let (g122, g212) = christoffel(&geom, x)?;
        let s = spin_connection_coeff(&geom, x)?;
        let u1 = effective_coefficients(&geom, ModeParams::new(1.0, Component::First), unit_velocity, x)?;
        let u2 = effective_coefficients(&geom, ModeParams::new(1.0, Component::Second), unit_velocity, x)?;
        println!("{x:8.4} {r:10.6} {r1:10.6} {g122:10.6} {g212:10.6} {s:10.6} {:10.6}", u1 - u2);
    }

    let horn = TorusGeometry::new(1.0, 1.0)?;
    match christoffel(&horn, PI) {
        Err(e) => println!("horn torus at x = pi: {e}"),
        Ok(v) => println!("unexpected value {v:?}"),
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
