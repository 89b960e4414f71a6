use proptest::prelude::*;
use refdefect::cli::enumerate::{random_spec, specs_of_size};
use refdefect::cli::verify::{pool, random_operator, random_subspace};
use refdefect::formulas::{is_k_reflexive_image, rd_k_formula, reflexivity_index};
use refdefect::jordan::{jordan_block, segre};
use refdefect::refcover::{build_pipeline, ref_k_primal_superset};
use refdefect::rng;
use refdefect::{Family, Mat, Scalar, Subspace};

fn scalar() -> impl Strategy<Value = Scalar> {
    (-6i64..=6, 1i64..=4, -6i64..=6, 1i64..=4).prop_map(|(a, b, c, d)| Scalar::gaussian(a, b, c, d))
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = Mat> {
    prop::collection::vec(
        prop_oneof![2 => Just(Scalar::zero()), 3 => scalar()],
        rows * cols,
    )
    .prop_map(move |data| Mat::from_vec(rows, cols, data).expect("length matches"))
}

fn any_matrix() -> impl Strategy<Value = Mat> {
    (1usize..=5, 1usize..=5).prop_flat_map(|(r, c)| matrix(r, c))
}

fn subspace_pair() -> impl Strategy<Value = (Subspace, Subspace)> {
    (1usize..=4, 1usize..=4, any::<u64>()).prop_map(|(m, n, seed)| {
        let mut rng = rng::seeded(seed);
        (
            random_subspace(&mut rng, m, n),
            random_subspace(&mut rng, m, n),
        )
    })
}

fn family() -> impl Strategy<Value = Family> {
    prop_oneof![Just(Family::Derivation), Just(Family::Mult)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn scalar_field_laws(x in scalar(), y in scalar(), z in scalar()) {
        prop_assert_eq!(&(&x + &y) * &z, &(&x * &z) + &(&y * &z));
        prop_assert_eq!(&x * &y, &y * &x);
        if let Some(inv) = x.inv() {
            prop_assert!((&x * &inv).is_one());
        } else {
            prop_assert!(x.is_zero());
        }
        prop_assert_eq!(x.to_string().parse::<Scalar>().unwrap(), x);
    }

    #[test]
    fn rref_is_idempotent_and_rank_is_transpose_invariant(m in any_matrix()) {
        let r = m.rref();
        prop_assert_eq!(&r.reduced.rref().reduced, &r.reduced);
        prop_assert_eq!(m.rank(), m.transpose().rank());
        let kernel = m.kernel_basis();
        prop_assert_eq!(kernel.len() + m.rank(), m.cols());
        for v in &kernel {
            prop_assert!((&m * v).is_zero());
        }
    }

    #[test]
    fn kron_mixed_product(
        (a, c) in (1usize..=3, 1usize..=3, 1usize..=3).prop_flat_map(|(p, q, s)| (matrix(p, q), matrix(q, s))),
        (b, d) in (1usize..=3, 1usize..=3, 1usize..=3).prop_flat_map(|(p, q, s)| (matrix(p, q), matrix(q, s))),
    ) {
        prop_assert_eq!(&a.kron(&b) * &c.kron(&d), (&a * &c).kron(&(&b * &d)));
    }

    #[test]
    fn vec_of_sandwich_is_kron_action(
        (x, t, y) in (1usize..=3, 1usize..=3).prop_flat_map(|(p, r)| (matrix(p, p), matrix(p, r), matrix(r, r))),
    ) {
        prop_assert_eq!((&(&x * &t) * &y).vec(), &y.transpose().kron(&x) * &t.vec());
    }

    #[test]
    fn annihilator_is_an_involution((s, _) in subspace_pair()) {
        let (m, n) = s.ambient();
        let ann = s.annihilator();
        prop_assert_eq!(ann.ambient(), (n, m));
        prop_assert_eq!(ann.dim() + s.dim(), m * n);
        prop_assert_eq!(ann.annihilator(), s.clone());
        for c in ann.basis() {
            for x in s.basis() {
                prop_assert!((&c * &x).trace().is_zero());
            }
        }
    }

    #[test]
    fn lattice_dimension_formula((s1, s2) in subspace_pair()) {
        let sum = s1.sum(&s2).unwrap();
        let cap = s1.intersect(&s2).unwrap();
        prop_assert_eq!(s1.dim() + s2.dim(), sum.dim() + cap.dim());
        prop_assert!(cap.is_subspace_of(&s1) && cap.is_subspace_of(&s2));
        prop_assert!(s1.is_subspace_of(&sum) && s2.is_subspace_of(&sum));
        // Annihilators swap sum and intersection.
        prop_assert_eq!(sum.annihilator(), s1.annihilator().intersect(&s2.annihilator()).unwrap());
    }

    #[test]
    fn annihilator_commutes_with_conjugation(n in 1usize..=4, seed in any::<u64>()) {
        let mut rng = rng::seeded(seed);
        let s = random_subspace(&mut rng, n, n);
        let (a, a_inv) = rng::invertible(&mut rng, n);
        let (b, b_inv) = rng::invertible(&mut rng, n);
        prop_assert_eq!(
            s.transform(&a, &b).unwrap().annihilator(),
            s.annihilator().transform(&b_inv, &a_inv).unwrap()
        );
    }

    #[test]
    fn image_annihilator_is_adjoint_kernel(seed in any::<u64>()) {
        let op = random_operator(&mut rng::seeded(seed));
        prop_assert_eq!(op.image_subspace().annihilator(), op.adjoint().kernel_subspace());
    }

    #[test]
    fn subspace_json_roundtrip((s, _) in subspace_pair()) {
        let text = serde_json::to_string(&s).unwrap();
        prop_assert_eq!(serde_json::from_str::<Subspace>(&text).unwrap(), s);
    }

    #[test]
    fn inverse_jordan_block_keeps_its_size(size in 1usize..=5, idx in 0usize..7) {
        let lambda = pool()[idx].clone();
        prop_assume!(!lambda.is_zero());
        let inv = jordan_block(size, &lambda).inverse().unwrap();
        prop_assert_eq!(segre(&inv, &lambda.inv().unwrap()), vec![size]);
    }

    #[test]
    fn segre_reads_back_the_spec(n in 1usize..=6, seed in any::<u64>()) {
        let pool = pool();
        let spec = random_spec(&mut rng::seeded(seed), n, &pool);
        let m = spec.build();
        for eig in &pool {
            let mut sizes: Vec<usize> = spec.blocks.iter().filter(|b| &b.eig == eig).map(|b| b.size).collect();
            sizes.sort_unstable_by(|x, y| y.cmp(x));
            prop_assert_eq!(segre(&m, eig), sizes);
        }
    }

    #[test]
    fn formula_is_symmetric_and_antitone(f in family(), n in 1usize..=6, seed in any::<u64>()) {
        let pool = pool();
        let mut rng = rng::seeded(seed);
        let a = random_spec(&mut rng, n, &pool);
        let b = random_spec(&mut rng, n, &pool);
        let index = reflexivity_index(f, &a, &b);
        let mut last = usize::MAX;
        for k in 1..=n + 1 {
            let rd = rd_k_formula(f, &a, &b, k);
            prop_assert_eq!(rd, rd_k_formula(f, &b, &a, k));
            prop_assert!(rd <= last);
            prop_assert_eq!(rd == 0, k >= index);
            last = rd;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn exact_cover_chain(f in family(), n in 1usize..=4, seed in any::<u64>()) {
        let pool = pool();
        let mut rng = rng::seeded(seed);
        let a = random_spec(&mut rng, n, &pool);
        let b = random_spec(&mut rng, n, &pool);
        let pipeline = build_pipeline(f, &a, &b, seed).unwrap();
        let image = pipeline.image();
        let mut previous = Subspace::full(n, n);
        for k in 1..=n + 1 {
            let refk = pipeline.refk(k).unwrap();
            prop_assert!(image.is_subspace_of(&refk));
            prop_assert!(refk.is_subspace_of(&previous));
            prop_assert_eq!(pipeline.rd(k).unwrap(), rd_k_formula(f, &a, &b, k));
            previous = refk;
        }
    }

    #[test]
    fn primal_superset_contains_exact_cover(f in family(), n in 2usize..=3, k in 1usize..=2, seed in any::<u64>()) {
        let pool = pool();
        let mut rng = rng::seeded(seed);
        let a = random_spec(&mut rng, n, &pool);
        let b = random_spec(&mut rng, n, &pool);
        let pipeline = build_pipeline(f, &a, &b, seed).unwrap();
        let refk = pipeline.refk(k).unwrap();
        let sup = ref_k_primal_superset(pipeline.image(), k, 40, seed);
        prop_assert!(refk.is_subspace_of(&sup));
    }
}

#[test]
fn criterion_matches_formula_exhaustively() {
    let eigs = [Scalar::zero(), Scalar::one(), Scalar::i()];
    for n in 1..=5 {
        let specs = specs_of_size(n, &eigs);
        for a in &specs {
            for b in &specs {
                for k in 1..=n {
                    assert_eq!(
                        is_k_reflexive_image(a, b, k),
                        rd_k_formula(Family::Derivation, a, b, k) == 0,
                        "{a} / {b}, k = {k}"
                    );
                }
            }
        }
    }
}
