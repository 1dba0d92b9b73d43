//! Solving for the coordinate map `g(x)` that turns the reduced Dirac
//! equation into a Pöschl–Teller problem, then checking the round trip.

use torus_susy::geometry::{solve_g_transform, transform_residual, Component, ModeParams, TorusGeometry};
use torus_susy::susy::PtParams;
use torus_susy::verify::{round_trip_slope, ROUND_TRIP_GRID};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let geom = TorusGeometry::new(1.0, 1.0)?;
    let target = PtParams::new(-2.0, 0.5).minus_coefficients();
    let (lo, hi, n) = ROUND_TRIP_GRID;
    let grid: Vec<f64> = (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect();

    for component in [Component::First, Component::Second] {
        let mode = ModeParams::new(1.0, component);
        let h0 = round_trip_slope(component);
        let t = solve_g_transform(&geom, mode, &target, &grid, h0)?;
        let err = transform_residual(&geom, mode, &target, &t)?;
        let (vmin, vmax) = t
            .fermi_velocity
            .iter()
            .fold((f64::INFINITY, 0.0_f64), |(a, b), v| (a.min(*v), b.max(*v)));
        println!(
            "{component:?}: h0 = {h0}, g spans [{:.4}, {:.4}], V_F in [{vmin:.4}, {vmax:.4}], max |V - V_target| = {err:.3e}",
            t.g[0],
            t.g[t.len() - 1]
        );
    }

    // too steep an initial slope drives g' out of range before the grid ends
    let mode = ModeParams::new(1.0, Component::First);
    if let Err(e) = solve_g_transform(&geom, mode, &target, &grid, 1.0) {
        println!("h0 = 1: {e}");
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
