//! Enumeration and sampling of Jordan specs.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::exactmat::Scalar;
use crate::jordan::{JordanBlock, JordanSpec};

/// Integer partitions of `n`, parts descending, in reverse lexicographic
/// order (`[n]` first).
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn rec(remaining: usize, max_part: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if remaining == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=remaining.min(max_part)).rev() {
            cur.push(part);
            rec(remaining - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// Every Jordan spec of total size `n` with eigenvalues from `pool`, once
/// per multiset of blocks, each in canonical block order.
///
/// `pool` must be sorted and free of duplicates.
pub fn specs_of_size(n: usize, pool: &[Scalar]) -> Vec<JordanSpec> {
    // Block types in canonical order: eigenvalue ascending, size descending.
    let types: Vec<(usize, usize)> = (0..pool.len())
        .flat_map(|e| (1..=n).rev().map(move |s| (e, s)))
        .collect();
    fn rec(
        types: &[(usize, usize)],
        start: usize,
        remaining: usize,
        cur: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        if remaining == 0 {
            out.push(cur.clone());
            return;
        }
        for (t, &(e, s)) in types.iter().enumerate().skip(start) {
            if s <= remaining {
                cur.push((e, s));
                rec(types, t, remaining - s, cur, out);
                cur.pop();
            }
        }
    }
    let mut raw = Vec::new();
    rec(&types, 0, n, &mut Vec::new(), &mut raw);
    raw.into_iter()
        .map(|blocks| JordanSpec {
            blocks: blocks
                .into_iter()
                .map(|(e, s)| JordanBlock::new(pool[e].clone(), s))
                .collect(),
        })
        .collect()
}

/// All ordered pairs `(a, b)` with `a.n = b.n = n`, for `n = 1..=n_max`.
pub fn spec_pairs(n_max: usize, pool: &[Scalar]) -> Vec<(JordanSpec, JordanSpec)> {
    let mut out = Vec::new();
    for n in 1..=n_max {
        let specs = specs_of_size(n, pool);
        for a in &specs {
            for b in &specs {
                out.push((a.clone(), b.clone()));
            }
        }
    }
    out
}

/// A uniformly chosen partition of `n` with a random eigenvalue per block.
pub fn random_spec<R: Rng>(rng: &mut R, n: usize, pool: &[Scalar]) -> JordanSpec {
    let parts = partitions(n);
    let sizes = parts.choose(rng).expect("n >= 1");
    JordanSpec {
        blocks: sizes
            .iter()
            .map(|&s| JordanBlock::new(pool.choose(rng).expect("nonempty pool").clone(), s))
            .collect(),
    }
}
