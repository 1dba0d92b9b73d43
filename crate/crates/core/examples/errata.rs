//! The errata ledger with live evidence, and a single verify check.

use torus_susy::errata::{collect, render_text};
use torus_susy::verify::run_check;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let ledger = collect();
    print!("{}", render_text(&ledger));
    let confirmed = ledger.iter().filter(|e| e.checks.iter().all(|c| c.passed())).count();
    println!("{confirmed} of {} entries have all checks passing", ledger.len());
    if let Some(c) = run_check("susy.energy_scaling_ratio") {
        println!("{} measured {:e} ({})", c.name, c.measured, c.tolerance);
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
