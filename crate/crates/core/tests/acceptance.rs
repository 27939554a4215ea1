//! Runs the eleven acceptance criteria and prints one line per criterion.
//! All comparisons are exact integer or polynomial equalities; no
//! floating-point tolerance is involved.

use std::process::ExitCode;
use std::time::Instant;

use latdeg::suite::run_all;

fn main() -> ExitCode {
    let start = Instant::now();
    let outcomes = run_all();
    for o in &outcomes {
        println!("{o}");
    }
    println!("acceptance suite finished in {:.1?}", start.elapsed());
    let failed: Vec<usize> = outcomes.iter().filter(|o| !o.passed).map(|o| o.id).collect();
    if outcomes.len() != 11 || !failed.is_empty() {
        println!("failed criteria: {failed:?}");
        return ExitCode::FAILURE;
    }
    println!("acceptance: 11/11 criteria passed");
    ExitCode::SUCCESS
}
