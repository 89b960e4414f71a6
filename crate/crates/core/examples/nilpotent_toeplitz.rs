//! The inner derivation of a nilpotent Jordan block: its image is annihilated by
//! the upper triangular Toeplitz matrices and its k-defect is n − k.

use refdefect::jordan::toeplitz_basis;
use refdefect::refcover::build_pipeline;
use refdefect::{Family, JordanSpec, Scalar, Subspace};

fn main() {
    for n in 3..=7 {
        let z = JordanSpec::single(Scalar::zero(), n);
        let pipeline = build_pipeline(Family::Derivation, &z, &z, 0).expect("derivation pipeline");
        let toeplitz = Subspace::span_of(n, n, &toeplitz_basis(n)).expect("square");
        assert_eq!(pipeline.image().annihilator(), toeplitz);
        let row: Vec<String> = (1..=n)
            .map(|k| {
                let refk = pipeline.refk(k).expect("k >= 1");
                format!(
                    "k={k}: dim {} rd {}",
                    refk.dim(),
                    refk.dim() - pipeline.image().dim()
                )
            })
            .collect();
        println!(
            "n={n} dim im={}  {}",
            pipeline.image().dim(),
            row.join(", ")
        );
    }
}
