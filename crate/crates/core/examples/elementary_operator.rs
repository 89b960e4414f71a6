//! Elementary operators, their matricization and the adjoint kernel.

use refdefect::elemop::ElementaryOperator;
use refdefect::jordan::jordan_block;
use refdefect::Scalar;

fn main() {
    let a = jordan_block(3, &Scalar::zero());
    let b = jordan_block(2, &Scalar::zero());
    let delta = ElementaryOperator::derivation(&a, &b).expect("square coefficients");
    println!(
        "Δ(T) = AT − TB on M_{:?}, length {}",
        delta.domain(),
        delta.len()
    );
    println!("matricization:\n{}", delta.matricize());

    let image = delta.image_subspace();
    let kernel = delta.kernel_subspace();
    println!("dim ker = {}, dim im = {}", kernel.dim(), image.dim());

    // The annihilator of the image is the kernel of the adjoint C ↦ Σ B_l C A_l.
    let adjoint_kernel = delta.adjoint().kernel_subspace();
    assert_eq!(image.annihilator(), adjoint_kernel);
    println!("(im Δ)_⊥ = ker Δ̃, spanned by:");
    for c in adjoint_kernel.basis() {
        print!("{c}");
    }
}
