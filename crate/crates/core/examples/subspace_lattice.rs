//! Canonical matrix subspaces: sum, intersection and the trace-pairing annihilator.

use refdefect::{Mat, Subspace};

fn main() {
    let diag = Subspace::span_of(
        2,
        2,
        &[
            Mat::from_i64(&[&[1, 0], &[0, 0]]),
            Mat::from_i64(&[&[0, 0], &[0, 1]]),
        ],
    )
    .expect("2x2 matrices");
    let upper = Subspace::span_of(
        2,
        2,
        &[
            Mat::from_i64(&[&[1, 0], &[0, 0]]),
            Mat::from_i64(&[&[0, 1], &[0, 0]]),
        ],
    )
    .expect("2x2 matrices");

    let sum = diag.sum(&upper).expect("same ambient");
    let cap = diag.intersect(&upper).expect("same ambient");
    println!(
        "dim diag {} + dim upper {} = dim sum {} + dim cap {}",
        diag.dim(),
        upper.dim(),
        sum.dim(),
        cap.dim()
    );

    let ann = upper.annihilator();
    println!(
        "annihilator of the upper triangular matrices (dim {}):",
        ann.dim()
    );
    for c in ann.basis() {
        print!("{c}");
    }
    assert_eq!(ann.annihilator(), upper);

    // Rectangular ambient: the annihilator of a subspace of M_{2,3} lives in M_{3,2}.
    let row = Subspace::span_of(2, 3, &[Mat::from_i64(&[&[1, 1, 1], &[0, 0, 0]])]).expect("2x3");
    println!(
        "annihilator of a line in M_2,3 has shape {:?} and dim {}",
        row.annihilator().ambient(),
        row.annihilator().dim()
    );

    println!("{}", serde_json::to_string(&cap).expect("serializable"));
}
