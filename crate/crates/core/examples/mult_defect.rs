//! Defects of T ↦ ATB − T across the four eigenvalue regimes.

use refdefect::refcover::build_pipeline;
use refdefect::{Family, JordanSpec};

fn main() {
    let cases = [
        ("0", "0"),
        ("0", "2"),
        ("2", "3"),
        ("2", "1/2"),
        ("i", "-i"),
    ];
    for (lambda, mu) in cases {
        let a = JordanSpec::parse(&[(lambda, 3)]).expect("valid");
        let b = JordanSpec::parse(&[(mu, 3)]).expect("valid");
        let pipeline = build_pipeline(Family::Mult, &a, &b, 11).expect("pipeline");
        let rds: Vec<usize> = (1..=3).map(|k| pipeline.rd(k).expect("k >= 1")).collect();
        println!(
            "{a} / {b}: dim im {:>2}, rd_1..3 = {rds:?}",
            pipeline.image().dim()
        );
    }
}
