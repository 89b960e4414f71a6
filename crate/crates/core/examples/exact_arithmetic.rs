//! Gaussian rationals and exact linear algebra.

use refdefect::{Mat, Scalar};

fn main() {
    let x: Scalar = "1/2+3/4*i".parse().expect("valid scalar");
    let y = Scalar::i();
    println!(
        "x = {x}, x·i = {}, 1/x = {}",
        &x * &y,
        x.inv().expect("nonzero")
    );

    let m = Mat::from_i64(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
    let r = m.rref();
    println!(
        "M =\n{m}rank {} pivots {:?}\nrref =\n{}",
        r.rank, r.pivot_cols, r.reduced
    );
    for v in m.kernel_basis() {
        println!("kernel vector (transposed): {}", v.transpose());
    }

    // vec(A·T·B) = (Bᵀ ⊗ A)·vec(T)
    let a = Mat::from_i64(&[&[1, -2], &[3, 0]]);
    let b = Mat::from_i64(&[&[2, 1], &[-1, 4]]);
    let t = Mat::from_i64(&[&[0, 5], &[7, -3]]);
    let lhs = (&(&a * &t) * &b).vec();
    let rhs = &b.transpose().kron(&a) * &t.vec();
    println!("vec(ATB) = {}", lhs.transpose());
    assert_eq!(lhs, rhs);
}
