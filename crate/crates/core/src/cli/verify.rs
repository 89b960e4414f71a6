//! Invariant suites run by `refdefect verify`.

use std::fmt::Write as _;

use rand::Rng;

use super::enumerate::{random_spec, specs_of_size};
use super::{CliError, CommandOutcome, DEFAULT_EIGEN_POOL};
use crate::elemop::ElementaryOperator;
use crate::exactmat::{Mat, Scalar};
use crate::formulas::{is_k_reflexive_image, rd_k_formula};
use crate::jordan::{jordan_block, segre, toeplitz_basis, JordanSpec};
use crate::refcover::{build_pipeline, ref_k_primal_superset, ref_k_transported, Family};
use crate::rng::{self, derive_seed, SeededRng};
use crate::subspace::Subspace;

#[derive(Clone, Debug, Default)]
pub struct VerifyOptions {
    pub seed: u64,
    /// Run only this suite.
    pub suite: Option<String>,
    /// Override the per-suite trial count of the randomized suites.
    pub trials: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct SuiteResult {
    pub name: &'static str,
    pub passed: usize,
    pub total: usize,
    /// First failing case, if any.
    pub counterexample: Option<String>,
    /// Extra statistics that are reported but never fail the suite.
    pub note: Option<String>,
}

impl SuiteResult {
    pub fn ok(&self) -> bool {
        self.passed == self.total
    }
}

struct Tally {
    name: &'static str,
    passed: usize,
    total: usize,
    counterexample: Option<String>,
    note: Option<String>,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Tally {
            name,
            passed: 0,
            total: 0,
            counterexample: None,
            note: None,
        }
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.total += 1;
        if ok {
            self.passed += 1;
        } else if self.counterexample.is_none() {
            self.counterexample = Some(describe());
        }
    }

    fn done(self) -> SuiteResult {
        SuiteResult {
            name: self.name,
            passed: self.passed,
            total: self.total,
            counterexample: self.counterexample,
            note: self.note,
        }
    }
}

type SuiteFn = fn(u64, Option<usize>) -> SuiteResult;

pub const SUITES: &[(&str, SuiteFn)] = &[
    ("exactmat", suite_exactmat),
    ("annihilator-involution", suite_annihilator_involution),
    ("lattice-dim", suite_lattice_dim),
    ("block-roundtrip", suite_block_roundtrip),
    ("conjugation", suite_conjugation),
    ("adjoint-kernel", suite_adjoint_kernel),
    ("nilpotent-example", suite_example_nilpotent),
    ("block-additivity", suite_additivity),
    ("mult-regimes", suite_mult_regimes),
    ("sandwich", suite_sandwich),
    ("jordan-inversion", suite_jordan_inversion),
    ("criterion-equivalence", suite_criterion_equivalence),
];

pub fn pool() -> Vec<Scalar> {
    DEFAULT_EIGEN_POOL
        .iter()
        .map(|t| t.parse().expect("valid pool"))
        .collect()
}

pub fn random_subspace(rng: &mut SeededRng, rows: usize, cols: usize) -> Subspace {
    let count = rng.gen_range(0..=rows * cols);
    let mats: Vec<Mat> = (0..count)
        .map(|_| rng::sparse_gaussian_matrix(rng, rows, cols))
        .collect();
    Subspace::span_of(rows, cols, &mats).expect("shapes agree")
}

fn suite_rng(seed: u64, name: &str) -> SeededRng {
    let tag = name
        .bytes()
        .fold(0u64, |h, b| h.wrapping_mul(131).wrapping_add(b as u64));
    rng::seeded(derive_seed(seed, tag))
}

fn suite_exactmat(seed: u64, trials: Option<usize>) -> SuiteResult {
    let mut t = Tally::new("exactmat");
    let mut rng = suite_rng(seed, t.name);
    for _ in 0..trials.unwrap_or(200) {
        let (r, c) = (rng.gen_range(1..=6), rng.gen_range(1..=6));
        let m = rng::sparse_gaussian_matrix(&mut rng, r, c);
        let rr = m.rref();
        t.check(
            m.rank() == m.transpose().rank() && rr.reduced.rref().reduced == rr.reduced,
            || format!("rank/idempotence: {m:?}"),
        );
    }
    for _ in 0..trials.unwrap_or(100) {
        let dims: Vec<usize> = (0..6).map(|_| rng.gen_range(1..=3)).collect();
        let a = rng::int_matrix(&mut rng, dims[0], dims[1], 2);
        let b = rng::int_matrix(&mut rng, dims[2], dims[3], 2);
        let c = rng::int_matrix(&mut rng, dims[1], dims[4], 2);
        let d = rng::int_matrix(&mut rng, dims[3], dims[5], 2);
        let lhs = &a.kron(&b) * &c.kron(&d);
        let rhs = (&a * &c).kron(&(&b * &d));
        t.check(lhs == rhs, || {
            format!("mixed product: {a:?} {b:?} {c:?} {d:?}")
        });

        let (p, r) = (dims[0], dims[2]);
        let x = rng::sparse_gaussian_matrix(&mut rng, p, p);
        let y = rng::sparse_gaussian_matrix(&mut rng, r, r);
        let tt = rng::sparse_gaussian_matrix(&mut rng, p, r);
        let direct = (&(&x * &tt) * &y).vec();
        let via_kron = &y.transpose().kron(&x) * &tt.vec();
        t.check(direct == via_kron, || {
            format!("vec/kron: {x:?} {tt:?} {y:?}")
        });
    }
    t.done()
}

fn suite_annihilator_involution(seed: u64, trials: Option<usize>) -> SuiteResult {
    let mut t = Tally::new("annihilator-involution");
    let mut rng = suite_rng(seed, t.name);
    for _ in 0..trials.unwrap_or(1000) {
        let (m, n) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
        let s = random_subspace(&mut rng, m, n);
        let ann = s.annihilator();
        t.check(
            ann.annihilator() == s && ann.dim() + s.dim() == m * n,
            || format!("{s:?}"),
        );
    }
    t.done()
}

fn suite_lattice_dim(seed: u64, trials: Option<usize>) -> SuiteResult {
    let mut t = Tally::new("lattice-dim");
    let mut rng = suite_rng(seed, t.name);
    for _ in 0..trials.unwrap_or(1000) {
        let (m, n) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
        let s1 = random_subspace(&mut rng, m, n);
        let s2 = random_subspace(&mut rng, m, n);
        let sum = s1.sum(&s2).expect("same ambient");
        let cap = s1.intersect(&s2).expect("same ambient");
        let ok = s1.dim() + s2.dim() == sum.dim() + cap.dim()
            && cap.is_subspace_of(&s1)
            && cap.is_subspace_of(&s2)
            && s1.is_subspace_of(&sum);
        t.check(ok, || format!("{s1:?} / {s2:?}"));
    }
    t.done()
}

fn suite_block_roundtrip(seed: u64, trials: Option<usize>) -> SuiteResult {
    let mut t = Tally::new("block-roundtrip");
    let mut rng = suite_rng(seed, t.name);
    for _ in 0..trials.unwrap_or(100) {
        let rows: Vec<usize> = (0..rng.gen_range(1..=3))
            .map(|_| rng.gen_range(1..=2))
            .collect();
        let cols: Vec<usize> = (0..rng.gen_range(1..=3))
            .map(|_| rng.gen_range(1..=2))
            .collect();
        let grid: Vec<Vec<Subspace>> = rows
            .iter()
            .map(|&r| {
                cols.iter()
                    .map(|&c| random_subspace(&mut rng, r, c))
                    .collect()
            })
            .collect();
        let composed = Subspace::block_compose(&grid, &rows, &cols).expect("sizes match");
        let total: usize = grid.iter().flatten().map(Subspace::dim).sum();
        let back = composed.block_decompose(&rows, &cols);
        t.check(
            composed.dim() == total && back.as_ref().is_ok_and(|g| *g == grid),
            || format!("rows {rows:?} cols {cols:?}"),
        );
    }
    t.done()
}

fn suite_conjugation(seed: u64, trials: Option<usize>) -> SuiteResult {
    let mut t = Tally::new("conjugation");
    let mut rng = suite_rng(seed, t.name);
    for _ in 0..trials.unwrap_or(100) {
        let n = rng.gen_range(1..=4);
        let s = random_subspace(&mut rng, n, n);
        let (a, a_inv) = rng::invertible(&mut rng, n);
        let (b, b_inv) = rng::invertible(&mut rng, n);
        let lhs = s.transform(&a, &b).expect("square").annihilator();
        let rhs = s.annihilator().transform(&b_inv, &a_inv).expect("square");
        t.check(lhs == rhs, || format!("S = {s:?}, A = {a:?}, B = {b:?}"));
    }
    // Covers of the operator families move with the space.
    let pool = pool();
    for case in 0..trials.map_or(20, |x| x.min(20)) {
        let n = rng.gen_range(2..=3);
        let a = random_spec(&mut rng, n, &pool);
        let b = random_spec(&mut rng, n, &pool);
        let family = if case % 2 == 0 {
            Family::Derivation
        } else {
            Family::Mult
        };
        let Ok(pipeline) = build_pipeline(family, &a, &b, derive_seed(seed, case as u64)) else {
            t.check(false, || format!("pipeline failed for {a} / {b}"));
            continue;
        };
        let (p, _) = rng::invertible(&mut rng, n);
        let (q, _) = rng::invertible(&mut rng, n);
        for k in 1..n {
            let refk = pipeline.refk(k).expect("k >= 1");
            let moved = ref_k_transported(&refk, &p, &q).expect("invertible");
            let direct = refk.transform(&p, &q).expect("square");
            let image = pipeline.image().transform(&p, &q).expect("square");
            t.check(
                moved == direct
                    && image.is_subspace_of(&moved)
                    && moved.dim() - image.dim() == refk.dim() - pipeline.image().dim(),
                || format!("{family:?} {a} / {b}, k = {k}"),
            );
        }
    }
    t.done()
}

fn suite_adjoint_kernel(seed: u64, trials: Option<usize>) -> SuiteResult {
    let mut t = Tally::new("adjoint-kernel");
    let mut rng = suite_rng(seed, t.name);
    for _ in 0..trials.unwrap_or(100) {
        let op = random_operator(&mut rng);
        let ann = op.image_subspace().annihilator();
        let ker = op.adjoint().kernel_subspace();
        t.check(ann == ker, || format!("{op:?}"));
    }
    t.done()
}

/// Random operator with `L ≤ 3`, `p, r ≤ 4` and small rational entries.
pub fn random_operator(rng: &mut SeededRng) -> ElementaryOperator {
    let len = rng.gen_range(1..=3);
    let (p, r) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
    // Sparse coefficients keep the image a proper subspace often enough.
    let coeff = |rng: &mut SeededRng, n: usize| {
        Mat::from_fn(n, n, |_, _| {
            if rng.gen_bool(0.4) {
                rng::rational(rng, 3, 2)
            } else {
                Scalar::zero()
            }
        })
    };
    let left = (0..len).map(|_| coeff(rng, p)).collect();
    let right = (0..len).map(|_| coeff(rng, r)).collect();
    ElementaryOperator::new(p, r, left, right).expect("shapes agree")
}

fn suite_example_nilpotent(_seed: u64, _trials: Option<usize>) -> SuiteResult {
    let mut t = Tally::new("nilpotent-example");
    for n in 3..=7 {
        let z = JordanSpec::single(Scalar::zero(), n);
        let Ok(pipeline) = build_pipeline(Family::Derivation, &z, &z, 0) else {
            t.check(false, || format!("pipeline failed for n = {n}"));
            continue;
        };
        let toeplitz = Subspace::span_of(n, n, &toeplitz_basis(n)).expect("square");
        let mut ok =
            pipeline.image().annihilator() == toeplitz && pipeline.image().dim() == n * n - n;
        for k in 1..=n + 1 {
            let refk = pipeline.refk(k).expect("k >= 1");
            let expected_dim = if k < n { n * n - k } else { n * n - n };
            ok &= refk.dim() == expected_dim
                && refk.dim() - pipeline.image().dim() == n.saturating_sub(k);
        }
        t.check(ok, || format!("n = {n}"));
    }
    t.done()
}

fn suite_additivity(seed: u64, trials: Option<usize>) -> SuiteResult {
    let mut t = Tally::new("block-additivity");
    let mut rng = suite_rng(seed, t.name);
    let pool = pool();
    for case in 0..trials.unwrap_or(200) {
        let n = rng.gen_range(1..=6);
        let a = random_spec(&mut rng, n, &pool);
        let b = random_spec(&mut rng, n, &pool);
        let family = if case % 4 == 3 {
            Family::Mult
        } else {
            Family::Derivation
        };
        let pipeline = match build_pipeline(family, &a, &b, derive_seed(seed, case as u64)) {
            Ok(p) => p,
            Err(e) => {
                t.check(false, || format!("{family:?} {a} / {b}: {e}"));
                continue;
            }
        };
        let decomposes = pipeline
            .composed_block_image()
            .is_ok_and(|s| s == *pipeline.image());
        let mut ok = decomposes;
        let mut last_dim = usize::MAX;
        for k in 1..=6 {
            let Ok(refk) = pipeline.refk(k) else {
                ok = false;
                break;
            };
            let rd = refk.dim() - pipeline.image().dim();
            ok &= rd == pipeline.block_rd_sum(k)
                && rd == rd_k_formula(family, &a, &b, k)
                && refk.dim() <= last_dim;
            last_dim = refk.dim();
        }
        t.check(ok, || format!("{family:?} {a} / {b}"));
    }
    t.done()
}

fn suite_mult_regimes(seed: u64, _trials: Option<usize>) -> SuiteResult {
    let mut t = Tally::new("mult-regimes");
    let pool = pool();
    let mut case = 0u64;
    for lambda in &pool {
        for mu in &pool {
            for p in 1..=3 {
                for r in 1..=3 {
                    case += 1;
                    let a = JordanSpec::single(lambda.clone(), p);
                    let b = JordanSpec::single(mu.clone(), r);
                    let ok = build_pipeline(Family::Mult, &a, &b, derive_seed(seed, case))
                        .is_ok_and(|pl| {
                            let surjective =
                                !(lambda.is_zero() && mu.is_zero()) || pl.image().is_full();
                            surjective
                                && (1..=4).all(|k| {
                                    pl.rd(k)
                                        .is_ok_and(|rd| rd == rd_k_formula(Family::Mult, &a, &b, k))
                                })
                        });
                    t.check(ok, || format!("{a} / {b}"));
                }
            }
        }
    }
    t.done()
}

fn suite_sandwich(seed: u64, trials: Option<usize>) -> SuiteResult {
    let mut t = Tally::new("sandwich");
    let pool = pool();
    let budget = trials.unwrap_or(300);
    let (mut converged, mut soft_total) = (0usize, 0usize);
    let mut case = 0u64;
    for n in 2..=4 {
        for lambda in &pool {
            for mu in &pool {
                let a = JordanSpec::single(lambda.clone(), n);
                let b = JordanSpec::single(mu.clone(), n);
                let pipeline =
                    build_pipeline(Family::Derivation, &a, &b, 0).expect("derivation pipeline");
                for k in 1..n {
                    case += 1;
                    let refk = pipeline.refk(k).expect("k >= 1");
                    let sup =
                        ref_k_primal_superset(pipeline.image(), k, budget, derive_seed(seed, case));
                    let ok = pipeline.image().is_subspace_of(&refk) && refk.is_subspace_of(&sup);
                    t.check(ok, || format!("{a} / {b}, k = {k}"));
                    soft_total += 1;
                    converged += usize::from(sup.dim() == refk.dim());
                }
            }
        }
    }
    t.note = Some(format!(
        "primal matched exact in {converged}/{soft_total} cases ({:.1}%) at budget {budget}",
        100.0 * converged as f64 / soft_total.max(1) as f64
    ));
    t.done()
}

fn suite_jordan_inversion(_seed: u64, _trials: Option<usize>) -> SuiteResult {
    let mut t = Tally::new("jordan-inversion");
    for lambda in pool().iter().filter(|x| !x.is_zero()) {
        for size in 1..=5 {
            let inv = jordan_block(size, lambda)
                .inverse()
                .expect("nonzero eigenvalue");
            let inv_eig = lambda.inv().expect("nonzero");
            t.check(segre(&inv, &inv_eig) == vec![size], || {
                format!("J{size}({lambda})")
            });
        }
    }
    t.done()
}

fn suite_criterion_equivalence(_seed: u64, _trials: Option<usize>) -> SuiteResult {
    let mut t = Tally::new("criterion-equivalence");
    let eigs = [Scalar::zero(), Scalar::one(), Scalar::i()];
    for n in 1..=5 {
        let specs = specs_of_size(n, &eigs);
        for a in &specs {
            for b in &specs {
                for k in 1..=n {
                    let crit = is_k_reflexive_image(a, b, k);
                    let rd = rd_k_formula(Family::Derivation, a, b, k);
                    let symmetric = rd == rd_k_formula(Family::Derivation, b, a, k);
                    t.check(crit == (rd == 0) && symmetric, || {
                        format!("{a} / {b}, k = {k}")
                    });
                }
            }
        }
    }
    t.done()
}

/// Run the selected suites.
pub fn run_suites(opts: &VerifyOptions) -> Result<Vec<SuiteResult>, CliError> {
    let selected: Vec<&(&str, SuiteFn)> = match &opts.suite {
        None => SUITES.iter().collect(),
        Some(name) => {
            let found: Vec<_> = SUITES.iter().filter(|(n, _)| n == name).collect();
            if found.is_empty() {
                let names: Vec<&str> = SUITES.iter().map(|(n, _)| *n).collect();
                return Err(CliError::Usage(format!(
                    "unknown suite {name:?}; available: {}",
                    names.join(", ")
                )));
            }
            found
        }
    };
    Ok(selected
        .iter()
        .map(|(_, f)| f(opts.seed, opts.trials))
        .collect())
}

pub fn cmd_verify(opts: &VerifyOptions) -> Result<CommandOutcome, CliError> {
    let results = run_suites(opts)?;
    let mut out = String::new();
    for r in &results {
        let status = if r.ok() { "PASS" } else { "FAIL" };
        writeln!(out, "[{status}] {:<24} {}/{}", r.name, r.passed, r.total).unwrap();
        if let Some(note) = &r.note {
            writeln!(out, "       {note}").unwrap();
        }
        if let Some(cx) = &r.counterexample {
            writeln!(out, "       counterexample: {cx}").unwrap();
        }
    }
    let ok = results.iter().all(SuiteResult::ok);
    writeln!(
        out,
        "{}",
        if ok {
            "all suites passed"
        } else {
            "some suites FAILED"
        }
    )
    .unwrap();
    Ok(CommandOutcome::new(ok, out))
}
