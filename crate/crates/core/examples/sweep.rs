//! A small exhaustive sweep comparing closed forms with exact covers.

use refdefect::cli::{run_sweep, SweepConfig};

fn main() {
    let cfg = SweepConfig::from_json(
        r#"{"n_max": 3, "eigen_pool": ["0", "1", "-1", "i"], "families": ["derivation", "mult"], "k_max": 3, "seed": 1}"#,
    )
    .expect("valid config");
    let out = run_sweep(&cfg, None, 0).expect("sweep runs");
    print!("{}", out.markdown(&cfg));
    for line in out
        .csv()
        .lines()
        .filter(|l| l.split(',').nth(9).is_some_and(|rd| rd != "0"))
        .take(8)
    {
        println!("{line}");
    }
}
