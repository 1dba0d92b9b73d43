//! Acceptance run: one PASS/FAIL line per criterion, followed by the
//! measurements behind it. Exits non-zero when any criterion fails.

use std::process::Command;
use std::time::{Duration, Instant};

use torus_susy::oracle::{solve_potential, Grid1D};
use torus_susy::susy::PtParams;
use torus_susy::verify::{run_check, Check};

struct Outcome {
    pass: bool,
    summary: String,
    details: Vec<String>,
}

impl Outcome {
    fn from_checks(summary: &str, names: &[&str]) -> Self {
        let checks: Vec<Check> = names
            .iter()
            .map(|n| run_check(n).unwrap_or_else(|| panic!("unknown check {n}")))
            .collect();
        Outcome {
            pass: checks.iter().all(Check::passed),
            summary: summary.to_string(),
            details: checks
                .iter()
                .map(|c| {
                    let s = if c.passed() { "ok  " } else { "FAIL" };
                    format!("{s} {} = {:.4e} ({})", c.name, c.measured, c.tolerance)
                })
                .collect(),
        }
    }
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let grid = Grid1D::new(0.002, std::f64::consts::PI - 0.002, 4000).expect("grid");
    let v = grid.sample(|x| PtParams::new(-2.0, 0.5).minus_coefficients().eval(x));
    let eps = solve_potential(&v, &grid, 5).expect("oracle");
    let elapsed = start.elapsed();
    let expected = [0.0, 5.0, 12.0, 21.0, 32.0];
    let ground = eps[0].abs();
    let worst_rel = (1..5).map(|n| (eps[n] - expected[n]).abs() / expected[n]).fold(0.0, f64::max);
    let pass = ground < 0.01 && worst_rel < 0.005 && elapsed < Duration::from_secs(5);
    Outcome {
        pass,
        summary: "spectrum of V- at A=-2, B=0.5 reproduces n(n+4)".into(),
        details: vec![
            format!("eps = {eps:.6?}"),
            format!("|eps_0| = {ground:.3e} (< 1e-2), max rel err n=1..4 = {worst_rel:.3e} (< 5e-3)"),
            format!("runtime {:.3} s (< 5 s)", elapsed.as_secs_f64()),
        ],
    }
}

fn criterion_11() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_torus-susy");
    let run = |args: &[&str]| Command::new(bin).env_remove("TORUS_SUSY_OUT_DIR").args(args).output().expect("binary runs");
    let pt = ["--case", "pt", "--A", "-2", "--B", "0.5"];
    let with = |head: &[&'static str], tail: &[&'static str]| -> Vec<&'static str> { head.iter().chain(tail).copied().collect() };

    let matrix: Vec<(Vec<&str>, i32)> = vec![
        (with(&["spectrum"], &pt), 0),
        (vec!["frobnicate"], 2),
        (with(&with(&["spectrum"], &pt), &["--levels", "50"]), 2),
        (vec!["potential", "--case", "pt", "--A", "-2"], 2),
        (vec!["potential", "--case", "beta", "--A", "-2", "--B", "0.5", "--C1", "1"], 1),
    ];
    let mut details = Vec::new();
    let matrix_ok = matrix.iter().all(|(args, code)| {
        let got = run(args).status.code();
        if got != Some(*code) {
            details.push(format!("exit code {got:?} for {args:?}, expected {code}"));
        }
        got == Some(*code)
    });
    details.push(format!("exit-code matrix: {}", if matrix_ok { "ok" } else { "mismatch" }));

    let spectrum = with(&with(&["spectrum"], &pt), &["--format", "json"]);
    let rerun_ok = run(&spectrum).stdout == run(&spectrum).stdout;
    details.push(format!("byte-identical rerun: {rerun_ok}"));

    let start = Instant::now();
    let verify = run(&["verify", "--suite", "all"]);
    let elapsed = start.elapsed();
    let report = String::from_utf8_lossy(&verify.stdout);
    for line in report.lines().filter(|l| l.starts_with("FAIL")) {
        details.push(format!("verify: {line}"));
    }
    let verify_ok = verify.status.code() == Some(0) && elapsed < Duration::from_secs(60);
    details.push(format!(
        "verify --suite all exit {:?} in {:.2} s (want 0 in < 60 s)",
        verify.status.code(),
        elapsed.as_secs_f64()
    ));

    Outcome {
        pass: matrix_ok && rerun_ok && verify_ok,
        summary: "command-line contract".into(),
        details,
    }
}

fn main() {
    let criteria: Vec<(u32, Box<dyn Fn() -> Outcome>)> = vec![
        (1, Box::new(criterion_1)),
        (2, Box::new(|| Outcome::from_checks("V+ levels equal V- levels shifted by one", &["susy.isospectrality"]))),
        (
            3,
            Box::new(|| {
                Outcome::from_checks(
                    "V = W^2 -+ W' on the grid",
                    &["susy.identity_analytic_pt", "susy.identity_fd_rational", "susy.identity_fd_beta", "susy.identity_fd_appell"],
                )
            }),
        ),
        (
            4,
            Box::new(|| {
                Outcome::from_checks(
                    "rational terms cancel under the closure conditions",
                    &["susy.cancellation_equal_radii", "susy.appell_functional"],
                )
            }),
        ),
        (
            5,
            Box::new(|| {
                Outcome::from_checks(
                    "Jacobi eigenfunctions solve V-, have n nodes and are orthogonal",
                    &["susy.eigenfunction_residual", "susy.eigenfunction_nodes", "susy.eigenfunction_orthogonality"],
                )
            }),
        ),
        (
            6,
            Box::new(|| {
                Outcome::from_checks(
                    "ladder operator annihilates the ground state and maps levels onto V+",
                    &["susy.ladder_annihilation", "susy.ladder_eigenvector_alignment", "susy.ladder_norm"],
                )
            }),
        ),
        (
            7,
            Box::new(|| {
                Outcome::from_checks(
                    "iso(2,1) constraints and [J+, J-] = -2 J3",
                    &[
                        "algebra.st_constraints",
                        "algebra.u_constraint_closure",
                        "algebra.u_constraint_perturbed",
                        "algebra.commutator_u_free",
                        "algebra.commutator_u_free_order",
                        "algebra.commutator_closure_family",
                    ],
                )
            }),
        ),
        (
            8,
            Box::new(|| {
                Outcome::from_checks(
                    "Casimir potential differs from V- by a constant; algebra and SUSY spectra agree",
                    &["algebra.casimir_offset_spread", "algebra.spectrum_identity", "algebra.spectrum_oracle"],
                )
            }),
        ),
        (
            9,
            Box::new(|| {
                Outcome::from_checks(
                    "incomplete beta and Appell F1 against independent references",
                    &[
                        "special.incomplete_beta_vs_quadrature",
                        "special.appell_vs_double_series",
                        "special.appell_reduction_y0",
                        "special.appell_reduction_diagonal",
                    ],
                )
            }),
        ),
        (
            10,
            Box::new(|| {
                Outcome::from_checks(
                    "g transform round trip reproduces the PT target",
                    &["geometry.round_trip_component1", "geometry.round_trip_component2"],
                )
            }),
        ),
        (11, Box::new(criterion_11)),
    ];

    let mut failed = Vec::new();
    for (n, f) in &criteria {
        let o = f();
        println!("{} criterion {n}: {}", if o.pass { "PASS" } else { "FAIL" }, o.summary);
        for d in &o.details {
            println!("    {d}");
        }
        if !o.pass {
            failed.push(*n);
        }
    }
    println!();
    if failed.is_empty() {
        println!("acceptance: all {} criteria pass", criteria.len());
    } else {
        println!("acceptance: {} of {} criteria fail: {failed:?}", failed.len(), criteria.len());
        std::process::exit(1);
    }
}
