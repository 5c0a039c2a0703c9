//! Acceptance suite: one line per criterion.
//!
//! Known failures are reported as FAIL but do not fail the target; a known
//! failure that starts passing does.

use std::path::PathBuf;

use klcells_cli::accept::{self, AcceptOptions};
use klcells_cli::config::DEFAULT_SEED;

fn main() {
    let opts = AcceptOptions {
        seed: DEFAULT_SEED,
        exe: Some(PathBuf::from(env!("CARGO_BIN_EXE_klcells"))),
        golden: Some(PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/tests/golden"))),
        only: Vec::new(),
    };
    let results = accept::run(&opts);
    for r in &results {
        println!("{}", r.line());
    }
    let expected = accept::as_expected(&results);
    println!(
        "acceptance: {} of {} criteria pass; outcome {}",
        results.iter().filter(|r| r.pass()).count(),
        results.len(),
        if expected { "matches the recorded expectations" } else { "DEVIATES from the recorded expectations" }
    );
    if !expected {
        std::process::exit(1);
    }
}
