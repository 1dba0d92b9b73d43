//! Closed-form levels against the finite-difference oracle, plus the
//! isospectrality of the partner pair.

use std::collections::BTreeMap;
use torus_susy::oracle::{isospectral_check, solve_potential, EigenReport, Grid1D};
use torus_susy::susy::{PtParams, SpectrumFormula};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let pt = PtParams::new(-2.0, 0.5);
    let grid = Grid1D::symmetric(0.002, 4000)?;
    let v_minus = grid.sample(|x| pt.minus_coefficients().eval(x));
    let v_plus = grid.sample(|x| pt.plus_coefficients().eval(x));

    let formula = SpectrumFormula::new(pt.a, 1.0, pt.normalizable());
    let expected = (0..5).map(|n| formula.eps_minus(n)).collect::<Result<Vec<_>, _>>()?;
    let numeric = solve_potential(&v_minus, &grid, 5)?;
    let mut params = BTreeMap::new();
    params.insert("A".to_string(), pt.a);
    params.insert("B".to_string(), pt.b);
    let report = EigenReport::compare("pt", params, &expected, &numeric, 5e-3, 1e-2);
    for l in &report.levels {
        println!("n={}  exact {:>5}  oracle {:.6}  rel {:.2e}", l.n, l.eps_analytic, l.eps_numeric, l.rel_err);
    }
    println!("pass: {}", report.pass);

    let iso = isospectral_check(&v_minus, &v_plus, &grid, 4, 5e-3)?;
    println!("spec(V+) = spec(V-) without the ground state: {} (max rel {:.2e})", iso.pass, iso.max_rel_err);

    let on_wide_torus = SpectrumFormula::new(pt.a, 2.0, pt.normalizable()).energies(2)?;
    println!(
        "level 2 with a = 2: E_eq37 = {}, E_eq89 = {}",
        on_wide_torus.e_eq37, on_wide_torus.e_eq89
    );
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
