//! The definition-level oracle: intersect S + {T : T|_V = 0} over test
//! subspaces V and compare with the exact cover.

use refdefect::refcover::{build_pipeline, ref_k_primal_superset};
use refdefect::{Family, JordanSpec};

fn main() {
    let a = JordanSpec::parse(&[("0", 4)]).expect("valid");
    let pipeline = build_pipeline(Family::Derivation, &a, &a, 0).expect("pipeline");
    for k in 1..4 {
        let exact = pipeline.refk(k).expect("k >= 1");
        for budget in [1, 4, 300] {
            let sup = ref_k_primal_superset(pipeline.image(), k, budget, 5);
            assert!(exact.is_subspace_of(&sup));
            println!(
                "k={k} budget={budget:>3}: primal dim {:>2}, exact dim {:>2}",
                sup.dim(),
                exact.dim()
            );
        }
    }
}
