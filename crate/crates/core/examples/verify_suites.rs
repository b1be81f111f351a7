//! Runs the randomised identity suites and prints their table.
//!
//! cargo run --release --example verify_suites -- [seed] [samples]

use quadric_cert::cli::verify::{run_suites, table};
use quadric_cert::quadric::QUADRIC_TOL;

fn main() {
    let mut args = std::env::args().skip(1);
    let seed: u64 = args.next().map_or(0, |s| s.parse().expect("seed"));
    let n: usize = args.next().map_or(10_000, |s| s.parse().expect("samples"));
    let rows = run_suites(seed, n, QUADRIC_TOL);
    print!("{}", table(&rows));
    if rows.iter().any(|r| !r.passed) {
        std::process::exit(1);
    }
}
