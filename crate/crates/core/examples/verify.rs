//! Runs every verification suite with a fixed seed and prints a summary.

use tl_core::generate::Bounds;
use tl_core::suites::{run_suite, SUITES};

fn main() -> tl_core::Result<()> {
    let trials = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(50);
    for name in SUITES {
        let r = run_suite(name, trials, 1, Bounds::default())?;
        println!("{:<16} pass {:<5} checks {:>5} in {:.3}s", r.suite_name, r.pass, r.checks, r.elapsed_secs);
    }
    Ok(())
}
