//! Exact covers of generalized derivation images versus the closed form.

use refdefect::formulas::{is_k_reflexive_image, rd_k_formula, reflexivity_index};
use refdefect::refcover::build_pipeline;
use refdefect::{Family, JordanSpec};

fn main() {
    let a = JordanSpec::parse(&[("1", 3), ("1", 1), ("i", 2)]).expect("valid");
    let b = JordanSpec::parse(&[("1", 2), ("0", 2), ("i", 2)]).expect("valid");
    let pipeline = build_pipeline(Family::Derivation, &a, &b, 7).expect("pipeline");
    println!("A = {a}, B = {b}, dim im = {}", pipeline.image().dim());
    for k in 1..=4 {
        let exact = pipeline.rd(k).expect("k >= 1");
        let formula = rd_k_formula(Family::Derivation, &a, &b, k);
        println!(
            "k={k}: rd exact {exact}, formula {formula}, block sum {}, k-reflexive {}",
            pipeline.block_rd_sum(k),
            is_k_reflexive_image(&a, &b, k)
        );
        assert_eq!(exact, formula);
    }
    println!(
        "reflexivity index {}",
        reflexivity_index(Family::Derivation, &a, &b)
    );

    // Rectangular single blocks: T ↦ J_3(2)T − TJ_2(2) on 3x2 matrices.
    let p = JordanSpec::parse(&[("2", 3)]).expect("valid");
    let r = JordanSpec::parse(&[("2", 2)]).expect("valid");
    let rect = build_pipeline(Family::Derivation, &p, &r, 0).expect("pipeline");
    println!(
        "J3(2) vs J2(2): dim im {}, rd_1 {}",
        rect.image().dim(),
        rect.rd(1).expect("k >= 1")
    );
}
