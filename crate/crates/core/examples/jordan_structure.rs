//! Jordan specs, Segre characteristics and exact similarity search.

use refdefect::jordan::{find_similarity, jordan_block, segre, SimilaritySearch};
use refdefect::{JordanSpec, Scalar};

fn main() {
    let spec = JordanSpec::parse(&[("2", 3), ("2", 1), ("i", 2)]).expect("valid spec");
    let m = spec.build();
    println!("{spec}: n = {}", spec.n());
    for eig in ["2", "i", "0"] {
        let e: Scalar = eig.parse().expect("scalar");
        println!("  segre at {eig}: {:?}", segre(&m, &e));
    }

    // J_4(λ)⁻¹ is a single block at 1/λ.
    let lambda = Scalar::ratio(1, 3);
    let inv = jordan_block(4, &lambda).inverse().expect("invertible");
    let target = jordan_block(4, &lambda.inv().expect("nonzero"));
    println!(
        "segre of J4(1/3)⁻¹ at 3: {:?}",
        segre(&inv, &lambda.inv().expect("nonzero"))
    );

    let x = find_similarity(&inv, &target, SimilaritySearch::default()).expect("similar");
    println!("X with X⁻¹·J4(1/3)⁻¹·X = J4(3):\n{x}");
    assert_eq!(&(&x.inverse().expect("invertible") * &inv) * &x, target);
}
