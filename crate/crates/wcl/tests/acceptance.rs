//! Runs every acceptance criterion and prints one line per criterion.

use std::process::ExitCode;

use wcl::acceptance::{run, Options};

fn main() -> ExitCode {
    let opts = Options::default();
    let reports = run(&opts, |r| println!("{}", r.render()));
    let failed = reports.iter().filter(|r| !r.passed()).count();
    println!("acceptance: {} passed, {failed} failed", reports.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
