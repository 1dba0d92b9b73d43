//! The lowering operator `A = d/dx + W` annihilates the ground state and maps
//! excited states of `V-` onto eigenstates of `V+`.

use torus_susy::oracle::{build_hamiltonian, eigenpairs, Grid1D};
use torus_susy::susy::{cosine_similarity, eigenfunction_minus, ladder_apply, Direction, PtParams, SuperpotentialSpec};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let pt = PtParams::new(-2.0, 0.5);
    let spec = SuperpotentialSpec::PureTrigPt(pt);
    let grid = Grid1D::symmetric(0.002, 4000)?;

    let f0 = grid.sample(|x| eigenfunction_minus(&pt, 0, x));
    let a_f0 = ladder_apply(&spec, &f0, &grid, Direction::Lower)?;
    let norm = |v: &[f64]| v.iter().map(|x| x * x).sum::<f64>().sqrt();
    println!("|A F0| / |F0| = {:.2e}", norm(&a_f0) / norm(&f0));

    let plus = pt.plus_coefficients();
    let pairs = eigenpairs(&build_hamiltonian(&grid.sample(|x| plus.eval(x)), &grid)?, 3, &grid)?;
    for (n, (eps, vec)) in pairs.iter().enumerate() {
        let f = grid.sample(|x| eigenfunction_minus(&pt, n + 1, x));
        let af = ladder_apply(&spec, &f, &grid, Direction::Lower)?;
        println!("A F{} vs V+ eigenvector {n} (eps {eps:.4}): cos = {:.9}", n + 1, cosine_similarity(&af, vec));
    }

    let f1 = grid.sample(|x| eigenfunction_minus(&pt, 1, x));
    let back = ladder_apply(&spec, &ladder_apply(&spec, &f1, &grid, Direction::Lower)?, &grid, Direction::Raise)?;
    let interior = 200..grid.n_points - 200;
    let ratio: f64 = interior.clone().map(|i| back[i] * f1[i]).sum::<f64>() / interior.map(|i| f1[i] * f1[i]).sum::<f64>();
    println!("<F1, A^dagger A F1> / <F1, F1> = {ratio:.6} (eps_1 = 5)");
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
