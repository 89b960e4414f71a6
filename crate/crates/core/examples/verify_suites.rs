//! Run the built-in invariant suites with a reduced trial count.

use refdefect::cli::verify::run_suites;
use refdefect::cli::VerifyOptions;

fn main() {
    let opts = VerifyOptions {
        seed: 42,
        suite: None,
        trials: Some(25),
    };
    for r in run_suites(&opts).expect("known suites") {
        println!(
            "{:<24} {:>6}/{:<6} {}",
            r.name,
            r.passed,
            r.total,
            r.note.unwrap_or_default()
        );
    }
}
