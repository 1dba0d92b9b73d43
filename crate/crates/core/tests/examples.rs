#[allow(dead_code)]
#[path = "../examples/special_functions.rs"]
mod special_functions_example;

#[test]
fn special_functions_example_runs() {
    special_functions_example::run_example().expect("special_functions example");
}

#[allow(dead_code)]
#[path = "../examples/torus_geometry.rs"]
mod torus_geometry_example;

#[test]
fn torus_geometry_example_runs() {
    torus_geometry_example::run_example().expect("torus_geometry example");
}

#[allow(dead_code)]
#[path = "../examples/g_transform.rs"]
mod g_transform_example;

#[test]
fn g_transform_example_runs() {
    g_transform_example::run_example().expect("g_transform example");
}

#[allow(dead_code)]
#[path = "../examples/partner_potentials.rs"]
mod partner_potentials_example;

#[test]
fn partner_potentials_example_runs() {
    partner_potentials_example::run_example().expect("partner_potentials example");
}

#[allow(dead_code)]
#[path = "../examples/spectrum_oracle.rs"]
mod spectrum_oracle_example;

#[test]
fn spectrum_oracle_example_runs() {
    spectrum_oracle_example::run_example().expect("spectrum_oracle example");
}

#[allow(dead_code)]
#[path = "../examples/ladder.rs"]
mod ladder_example;

#[test]
fn ladder_example_runs() {
    ladder_example::run_example().expect("ladder example");
}

#[allow(dead_code)]
#[path = "../examples/spinors.rs"]
mod spinors_example;

#[test]
fn spinors_example_runs() {
    spinors_example::run_example().expect("spinors example");
}

#[allow(dead_code)]
#[path = "../examples/tails.rs"]
mod tails_example;

#[test]
fn tails_example_runs() {
    tails_example::run_example().expect("tails example");
}

#[allow(dead_code)]
#[path = "../examples/iso21_algebra.rs"]
mod iso21_algebra_example;

#[test]
fn iso21_algebra_example_runs() {
    iso21_algebra_example::run_example().expect("iso21_algebra example");
}

#[allow(dead_code)]
#[path = "../examples/errata.rs"]
mod errata_example;

#[test]
fn errata_example_runs() {
    errata_example::run_example().expect("errata example");
}
