//! Primal over-approximation of `Ref_k`.
//!
//! In finite dimensions `Ref_k S = ⋂_V (S + K_V)` over all `k`-dimensional
//! subspaces `V` of the column space, where `K_V = {T : T|_V = 0}`. Any
//! finite family of `V`s gives a superset; this module intersects over the
//! coordinate subspaces followed by seeded random ones.

use crate::exactmat::{Mat, Scalar};
use crate::rng;
use crate::subspace::Subspace;

/// `K_V` for `V` spanned by the columns of `v` (`cols × k`).
pub fn annihilated_by(rows: usize, v: &Mat) -> Subspace {
    let cols = v.rows();
    let mut mats = Vec::new();
    for w in v.transpose().kernel_basis() {
        for i in 0..rows {
            let mut t = Mat::zeros(rows, cols);
            for (j, x) in w.entries().iter().enumerate() {
                t[(i, j)] = x.clone();
            }
            mats.push(t);
        }
    }
    Subspace::span_of(rows, cols, &mats).expect("shapes agree")
}

/// All `k`-subsets of `0..n` in lexicographic order.
fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..n {
            if n - x < k - cur.len() {
                break;
            }
            cur.push(x);
            rec(x + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

fn coordinate_frame(cols: usize, subset: &[usize]) -> Mat {
    Mat::from_fn(cols, subset.len(), |i, j| {
        if subset[j] == i {
            Scalar::one()
        } else {
            Scalar::zero()
        }
    })
}

/// Superset of `Ref_k s` from `budget` test subspaces `V`: the coordinate
/// subspaces first (in lexicographic order), then seeded random `k`-tuples
/// with entries `a/b`, `a ∈ [−9, 9]`, `b ∈ [1, 4]`.
///
/// Samples form a fixed sequence per seed, so a larger budget never gives a
/// larger result. Stops early once the intersection has shrunk to `s`.
pub fn ref_k_primal_superset(s: &Subspace, k: usize, budget: usize, seed: u64) -> Subspace {
    let cols = s.ambient().1;
    ref_k_primal_superset_in_basis(s, k, budget, seed, &Mat::identity(cols))
}

/// As [`ref_k_primal_superset`], with the structured frames spanned by
/// `k` columns of `basis` instead of `k` coordinate vectors.
///
/// Random frames almost never cut `Ref_k` down on their own: the frames that
/// matter are built from eigenvectors, so pass a basis adapted to them.
pub fn ref_k_primal_superset_in_basis(
    s: &Subspace,
    k: usize,
    budget: usize,
    seed: u64,
    basis: &Mat,
) -> Subspace {
    assert!(k >= 1, "k must be positive");
    assert!(budget >= 1, "budget must be positive");
    let (rows, cols) = s.ambient();
    assert_eq!(basis.shape(), (cols, cols), "basis must be cols × cols");
    if k >= cols {
        return s.clone();
    }
    let mut rng = rng::seeded(seed);
    let coordinate = k_subsets(cols, k);
    let mut acc = Subspace::full(rows, cols);
    for t in 0..budget {
        let frame = match coordinate.get(t) {
            Some(subset) => basis * &coordinate_frame(cols, subset),
            None => Mat::from_fn(cols, k, |_, _| rng::rational(&mut rng, 9, 4)),
        };
        let candidate = s.sum(&annihilated_by(rows, &frame)).expect("same ambient");
        acc = acc.intersect(&candidate).expect("same ambient");
        if acc.dim() == s.dim() {
            break;
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elemop::make_derivation;
    use crate::jordan::jordan_block;

    #[test]
    fn subsets() {
        assert_eq!(k_subsets(4, 2).len(), 6);
        assert_eq!(k_subsets(3, 1), vec![vec![0], vec![1], vec![2]]);
        assert_eq!(k_subsets(3, 3), vec![vec![0, 1, 2]]);
    }

    #[test]
    fn annihilated_space() {
        let v = Mat::column(vec![Scalar::one(), Scalar::from_int(2), Scalar::zero()]);
        let kv = annihilated_by(2, &v);
        assert_eq!(kv.dim(), 4);
        for t in kv.basis() {
            assert!((&t * &v).is_zero());
        }
    }

    #[test]
    fn full_column_count_returns_input() {
        let s = Subspace::span_of(3, 3, &[Mat::identity(3)]).unwrap();
        assert_eq!(ref_k_primal_superset(&s, 3, 1, 0), s);
        assert_eq!(ref_k_primal_superset(&s, 5, 1, 0), s);
    }

    #[test]
    fn full_space_is_fixed() {
        let full = Subspace::full(2, 2);
        for k in 1..=2 {
            for budget in [1, 10] {
                assert_eq!(ref_k_primal_superset(&full, k, budget, 3), full);
            }
        }
    }

    #[test]
    fn nilpotent_derivation_descends_to_exact() {
        let j = jordan_block(3, &Scalar::zero());
        let image = make_derivation(&j, &j).unwrap().image_subspace();
        let sup = ref_k_primal_superset(&image, 1, 200, 42);
        assert_eq!(sup.dim(), 8);
        assert!(image.is_subspace_of(&sup));
    }

    #[test]
    fn budget_monotone() {
        let j = jordan_block(3, &Scalar::zero());
        let image = make_derivation(&j, &j).unwrap().image_subspace();
        let mut last = usize::MAX;
        for budget in [1, 2, 3, 4, 8, 20] {
            let sup = ref_k_primal_superset(&image, 1, budget, 7);
            assert!(sup.dim() <= last);
            last = sup.dim();
        }
    }

    #[test]
    fn adapted_basis_recovers_conjugated_cover() {
        // Image of the nilpotent derivation moved by T ↦ T·Q; the useful
        // frames move to Q⁻¹·e_j.
        let j = jordan_block(3, &Scalar::zero());
        let q = Mat::from_i64(&[&[1, 2, 0], &[0, 1, -1], &[1, 0, 1]]);
        let q_inv = q.inverse().unwrap();
        let image = make_derivation(&j, &j).unwrap().image_subspace();
        let moved = image.transform(&Mat::identity(3), &q).unwrap();
        let sup = ref_k_primal_superset_in_basis(&moved, 1, 50, 1, &q_inv);
        assert_eq!(sup.dim(), 8);
    }
}
