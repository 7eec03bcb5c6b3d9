//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::thread;
use std::time::Instant;

use ncreal::calculus::{
    delta_block, delta_closed_form, delta_closed_form_pencil_inverse, lla_check, nc_property_harness, sample_in_domain,
    tt_series_eval, tt_series_eval_bruteforce, LlaCertified, LlaEquation, LlaWitness, Word,
};
use ncreal::expr::eval_expr;
use ncreal::linalg::{kron, perm_matrix};
use ncreal::sample::{nilpotent_point, random_compiled, random_invertible, random_mat, random_tuple, CompiledSample, ExprShape};
use ncreal::synthesis::{check_similarity, compile, find_similarity, is_minimal, minimize, realize_expr, realize_neg, realize_sum};
use ncreal::{parse, BlockLinearMap, FMRealization, MatTuple, QMat, Rat};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 20_260_601;
const CORPUS: usize = 210;

type Outcome = Result<String, String>;

fn rng(stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(SEED);
    r.set_stream(stream);
    r
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn build_corpus() -> Vec<CompiledSample<Rat>> {
    let mut r = rng(0);
    let mut out = Vec::new();
    while out.len() < CORPUS {
        let i = out.len();
        let s = [1, 1, 2, 2, 2, 1, 2, 2, 1, 3][i % 10];
        let d = 1 + i % 3;
        let shape = ExprShape { d, max_depth: 4, const_bound: 3 };
        if let Some(sample) = random_compiled(&mut r, shape, s, 2, 50).expect("compilation") {
            out.push(sample);
        }
    }
    out
}

/// A point of level `n` in the domain of the expression, if one is found.
fn expr_point(sample: &CompiledSample<Rat>, n: usize, r: &mut ChaCha8Rng) -> Option<(MatTuple<Rat>, QMat)> {
    (0..40).find_map(|_| {
        let x = random_tuple(r, sample.centre.d(), n, 2);
        eval_expr(&sample.expr, &x).ok().map(|v| (x, v))
    })
}

fn criterion_1(corpus: &[CompiledSample<Rat>]) -> Outcome {
    let mut r = rng(1);
    let mut compared = 0;
    for (i, c) in corpus.iter().enumerate() {
        let s = c.centre.level();
        for m in 1..=3 {
            let (x, v) = expr_point(c, s * m, &mut r).ok_or_else(|| format!("expression {i} ({}) has no sampled point at level {}", c.expr, s * m))?;
            ensure(c.realization.in_domain(&x).unwrap(), || format!("{}: point of dom(e) outside the pencil domain", c.expr))?;
            ensure(c.realization.eval(&x).unwrap() == v, || format!("{}: value mismatch at level {}", c.expr, s * m))?;
            compared += 1;
        }
    }
    Ok(format!("{} expressions, {compared} exact comparisons at levels s*m, m = 1, 2, 3", corpus.len()))
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn criterion_2(corpus: &[CompiledSample<Rat>]) -> Outcome {
    let mut r = rng(2);
    let (mut compared, mut empty) = (0, 0);
    for c in corpus {
        let s = c.centre.level();
        for n in (1..=4).filter(|&n| gcd(n, s) == 1).take(2) {
            let Some((x, v)) = expr_point(c, n, &mut r) else {
                empty += 1;
                continue;
            };
            let got = c.realization.eval_at_level_n(&x).map_err(|e| format!("{} at level {n}: {e}", c.expr))?;
            ensure(got == v, || format!("{}: level-{n} value mismatch", c.expr))?;
            compared += 1;
        }
    }
    ensure(compared >= 200, || format!("only {compared} comparisons"))?;
    Ok(format!("{compared} exact comparisons with I_s (x) f structure verified ({empty} level/expression pairs with no sampled domain point)"))
}

fn criterion_3(corpus: &[CompiledSample<Rat>]) -> Outcome {
    for c in corpus {
        let rep = lla_check(&c.realization);
        ensure(rep.pass(), || format!("{}: {} violations", c.expr, rep.violations.len()))?;
    }
    let y = MatTuple::new(vec![QMat::zeros(2, 2)]).unwrap();
    let bad = FMRealization::new(
        y,
        QMat::from_ints(&[[0, 1], [0, 0]]),
        QMat::identity(2),
        vec![BlockLinearMap::zero(2, 2, 2)],
        vec![BlockLinearMap::identity(2)],
    )
    .unwrap();
    let rep = lla_check(&bad);
    let hit = rep.violations.iter().find(|v| v.equation == LlaEquation::A && matches!(v.witness, LlaWitness::Basis { s: 0, .. }));
    ensure(hit.map(|v| &v.residual) == Some(&QMat::from_ints(&[[0, 1], [0, 0]])), || "counterexample not flagged with residual E_12 at S = E_11".into())?;
    Ok(format!("{} compiled realizations pass with zero residuals; counterexample flagged at S = E_11 with residual E_12", corpus.len()))
}

fn criterion_4(corpus: &[CompiledSample<Rat>]) -> Outcome {
    let mut r = rng(4);
    let mut realizations = 0;
    for c in corpus.iter().filter(|c| c.realization.state_dim() > 0).step_by(8).take(16) {
        let rep = nc_property_harness(&c.realization, 100, 2, &mut r).map_err(|e| e.to_string())?;
        ensure(rep.pass(), || format!("{}:\n{rep}", c.expr))?;
        for chk in rep.checks.iter().filter(|k| k.name != "similarity") {
            ensure(chk.checked >= 100, || format!("{}: only {} {} configurations", c.expr, chk.checked, chk.name))?;
        }
        realizations += 1;
    }
    ensure(realizations >= 10, || format!("only {realizations} realizations"))?;
    Ok(format!("{realizations} realizations x 100 configurations: direct sums, upper triangular, intertwining exact"))
}

fn criterion_5(corpus: &[CompiledSample<Rat>]) -> Outcome {
    let mut r = rng(5);
    let mut checked = 0;
    for c in corpus.iter().filter(|c| c.realization.state_dim() > 0).take(60) {
        let rz = &c.realization;
        ensure(lla_check(rz).pass() && is_minimal(rz), || format!("{}: hypotheses fail", c.expr))?;
        for m in 1..=2 {
            let Some(x) = sample_in_domain(rz, m, 2, &mut r).unwrap() else { continue };
            let (t, t_inv) = random_invertible(&mut r, x.level(), 2);
            let conj = x.conjugate(&t, &t_inv);
            ensure(rz.in_domain(&conj).unwrap(), || format!("{}: conjugate left the domain", c.expr))?;
            ensure(rz.eval(&conj).unwrap() == &(&t * &rz.eval(&x).unwrap()) * &t_inv, || format!("{}: values not conjugate", c.expr))?;
            checked += 1;
        }
    }
    ensure(checked >= 100, || format!("only {checked} similarities"))?;
    Ok(format!("{checked} random similarities preserve the domain and conjugate values"))
}

fn criterion_6(corpus: &[CompiledSample<Rat>]) -> Outcome {
    let mut checked = 0;
    for c in corpus.iter().take(80) {
        let r1 = &c.realization;
        let again = minimize(r1);
        ensure(again.state_dim() == r1.state_dim(), || format!("{}: minimize changed L", c.expr))?;
        let t = find_similarity(r1, &again).ok_or_else(|| format!("{}: no similarity to its re-minimization", c.expr))?;
        ensure(check_similarity(r1, &again, &t), || "bad similarity".into())?;

        let whole = minimize(&compile(&c.expr, &c.centre).unwrap());
        ensure(whole.state_dim() == r1.state_dim(), || format!("{}: L {} vs {}", c.expr, whole.state_dim(), r1.state_dim()))?;
        let t = find_similarity(&whole, r1).ok_or_else(|| format!("{}: synthesis orders not similar", c.expr))?;
        ensure(check_similarity(&whole, r1, &t), || "bad similarity".into())?;

        let zero = minimize(&realize_sum(r1, &realize_neg(r1).unwrap()).unwrap());
        ensure(zero.state_dim() == 0 && zero.feedthrough().is_zero(), || format!("{}: R - R has L = {}", c.expr, zero.state_dim()))?;
        checked += 1;
    }
    Ok(format!("{checked} expressions: idempotent minimization, two synthesis orders uniquely similar, R - R minimizes to L = 0"))
}

fn criterion_7(corpus: &[CompiledSample<Rat>]) -> Outcome {
    let mut r = rng(7);
    let (mut configs, mut compared) = (0, 0);
    for c in corpus.iter().filter(|c| c.realization.state_dim() > 0 && c.centre.level() <= 2).take(60) {
        let rz = &c.realization;
        let cert = LlaCertified::certify(rz).map_err(|e| e.to_string())?;
        let Some(x) = sample_in_domain(rz, 1, 2, &mut r).unwrap() else { continue };
        let n = x.level();
        let d = rz.d();
        let dirs: Vec<QMat> = (0..3).map(|_| random_mat(&mut r, n, n, 2)).collect();
        let centre = rz.centre().kron_identity(1);
        for len in 0..=3 {
            for w in Word::all(d, len) {
                let z = &dirs[..len];
                let mut pts = vec![x.clone()];
                pts.extend(std::iter::repeat_n(centre.clone(), len));
                let block = delta_block(|p| rz.eval(p), &w, &pts, z).map_err(|e| e.to_string())?;
                ensure(block == delta_closed_form(&cert, &w, &x, z).unwrap(), || format!("{}: word {w}", c.expr))?;
                let mut pts = vec![centre.clone(); len];
                pts.push(x.clone());
                let block = delta_block(|p| rz.pencil_inverse(p), &w, &pts, z).map_err(|e| e.to_string())?;
                ensure(block == delta_closed_form_pencil_inverse(&cert, &w, &x, z).unwrap(), || format!("{}: pencil inverse, word {w}", c.expr))?;
                compared += 2;
            }
        }
        configs += 1;
    }
    ensure(configs >= 50, || format!("only {configs} configurations"))?;
    Ok(format!("{configs} configurations, {compared} exact comparisons over all words of length <= 3"))
}

fn criterion_8(corpus: &[CompiledSample<Rat>]) -> Outcome {
    let mut r = rng(8);
    let mut checked = 0;
    for (i, c) in corpus.iter().enumerate().take(60) {
        let rz = &c.realization;
        let m = 1 + i % 3;
        let x = nilpotent_point(&mut r, &c.centre, m, 2);
        let v = rz.eval(&x).map_err(|e| format!("{}: {e}", c.expr))?;
        ensure(tt_series_eval(rz, &x).map_err(|e| e.to_string())? == v, || format!("{}: Neumann series differs", c.expr))?;
        ensure(tt_series_eval_bruteforce(rz, &x).map_err(|e| e.to_string())? == v, || format!("{}: faux-power series differs", c.expr))?;
        checked += 1;
    }
    ensure(checked >= 50, || format!("only {checked} points"))?;
    Ok(format!("{checked} jointly nilpotent points: Neumann series, faux-power series and pencil evaluation agree"))
}

fn criterion_9() -> Outcome {
    let y = MatTuple::new(vec![QMat::from_ints(&[[0, 1], [0, 0]]), QMat::from_ints(&[[0, 0], [1, 0]])]).unwrap();
    let rz = realize_expr(&parse("(x1*x2 - x2*x1)^-1").unwrap(), &y).unwrap();
    let mut r = rng(9);
    let (mut inside, mut outside) = (0, 0);
    for _ in 0..500 {
        let bound = if r.gen_bool(0.5) { 1 } else { 3 };
        let x: MatTuple<Rat> = random_tuple(&mut r, 2, 2, bound);
        let comm_det = x.get(0).commutator(x.get(1)).det().unwrap();
        let member = rz.in_domain(&x).unwrap();
        ensure(member == !num_traits::Zero::is_zero(&comm_det), || format!("membership {member} but det[X1, X2] = {comm_det}"))?;
        if member {
            inside += 1;
        } else {
            outside += 1;
        }
    }
    ensure(inside > 0 && outside > 0, || "samples did not cover both cases".into())?;
    Ok(format!("L = {}: 500 samples agree ({inside} in the domain, {outside} outside)", rz.state_dim()))
}

fn criterion_10() -> Outcome {
    let mut r = rng(10);
    let dim = |r: &mut ChaCha8Rng| r.gen_range(1..=3usize);
    for _ in 0..200 {
        let (n1, n2, n3, n4) = (dim(&mut r), dim(&mut r), dim(&mut r), dim(&mut r));
        let q: QMat = random_mat(&mut r, n1, n2, 5);
        let p: QMat = random_mat(&mut r, n3, n4, 5);
        let swapped = &(&perm_matrix::<Rat>(n3, n1) * &kron(&q, &p)) * &perm_matrix::<Rat>(n4, n2).transpose();
        ensure(kron(&p, &q) == swapped, || format!("swap fails for {n1}x{n2}, {n3}x{n4}"))?;
    }
    for _ in 0..200 {
        let (a, b, c, d, e, f) = (dim(&mut r), dim(&mut r), dim(&mut r), dim(&mut r), dim(&mut r), dim(&mut r));
        let ma: QMat = random_mat(&mut r, a, b, 5);
        let mb: QMat = random_mat(&mut r, d, e, 5);
        let mc: QMat = random_mat(&mut r, b, c, 5);
        let md: QMat = random_mat(&mut r, e, f, 5);
        ensure(&kron(&ma, &mb) * &kron(&mc, &md) == kron(&(&ma * &mc), &(&mb * &md)), || "mixed product fails".into())?;
    }
    for _ in 0..200 {
        let (n1, n2) = (dim(&mut r) + 1, dim(&mut r) + 1);
        let prod = &perm_matrix::<Rat>(n1, n2) * &perm_matrix::<Rat>(n2, n1);
        ensure(prod == QMat::identity(n1 * n2), || format!("E({n1},{n2}) E({n2},{n1}) != I"))?;
        ensure(perm_matrix::<Rat>(n1, n2).transpose() == perm_matrix(n2, n1), || format!("E({n1},{n2})^T != E({n2},{n1})"))?;
    }
    Ok("200 samples each: Kronecker swap, mixed product, permutation inverses".into())
}

fn main() {
    let start = Instant::now();
    let corpus = Arc::new(build_corpus());
    println!("acceptance: seed {SEED}, corpus of {} compiled expressions built in {:.1?}", corpus.len(), start.elapsed());
    let count_s = |s| corpus.iter().filter(|c| c.centre.level() == s).count();
    let max_l = corpus.iter().map(|c| c.realization.state_dim()).max().unwrap_or(0);
    let with_inv = corpus.iter().filter(|c| c.expr.inversion_count() > 0).count();
    let constant = corpus.iter().filter(|c| c.realization.state_dim() == 0).count();
    println!(
        "acceptance: s = 1/2/3: {}/{}/{}; {with_inv} with inversions; {constant} constant; max L = {max_l}",
        count_s(1),
        count_s(2),
        count_s(3)
    );

    type Job = fn(&[CompiledSample<Rat>]) -> Outcome;
    let jobs: Vec<(&str, Job)> = vec![
        ("oracle equivalence", criterion_1),
        ("level-n transfer", criterion_2),
        ("L-LA soundness", criterion_3),
        ("nc-function structure", criterion_4),
        ("similarity invariance", criterion_5),
        ("minimality and uniqueness", criterion_6),
        ("difference-differential cross-validation", criterion_7),
        ("series/pencil agreement", criterion_8),
        ("known-domain regression", |_| criterion_9()),
        ("exact-linalg identities", |_| criterion_10()),
    ];
    let handles: Vec<_> = jobs
        .into_iter()
        .map(|(name, job)| {
            let corpus = Arc::clone(&corpus);
            let handle = thread::spawn(move || {
                let t = Instant::now();
                let out = catch_unwind(AssertUnwindSafe(|| job(&corpus))).unwrap_or_else(|p| {
                    Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_else(|| "panic".into()))
                });
                (out, t.elapsed())
            });
            (name, handle)
        })
        .collect();
    let mut failed = 0;
    for (i, (name, handle)) in handles.into_iter().enumerate() {
        let (out, took) = handle.join().expect("criterion thread");
        match out {
            Ok(detail) => println!("criterion {:>2} {name}: PASS ({detail}) [{took:.1?}]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} {name}: FAIL ({why}) [{took:.1?}]", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed in {:.1?}", 10 - failed, start.elapsed());
    if failed > 0 {
        std::process::exit(1);
    }
}
