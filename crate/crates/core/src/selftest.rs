//! Seeded run of the module invariants at small scale.
//!
//! Trial `t` of every check draws from its own stream of a generator seeded
//! with the run seed, so results do not depend on how trials are spread
//! across threads.

use std::fmt;
use std::thread;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::calculus::{
    delta_block, delta_closed_form, la_check_series, lla_check, lla_check_extended, nc_property_harness,
    sample_in_domain, tt_coefficient, tt_series_eval, tt_series_eval_bruteforce, LlaCertified, Word,
};
use crate::expr::{eval_expr, eval_expr_algebra, MatrixAlgebra};
use crate::linalg::{kron, kron_identity, perm_matrix};
use crate::sample::{nilpotent_point, random_compiled, random_expr, random_invertible, random_mat, random_tuple, CompiledSample, ExprShape};
use crate::synthesis::{compile, find_similarity, is_minimal, minimize, realize_neg, realize_sum};
use crate::{QMat, Rat, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelftestCheck {
    pub name: &'static str,
    pub passed: usize,
    pub skipped: usize,
    pub failures: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelftestReport {
    pub seed: u64,
    pub trials: usize,
    pub checks: Vec<SelftestCheck>,
}

impl SelftestReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.failures.is_empty())
    }
}

impl fmt::Display for SelftestReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "selftest seed {} trials {}", self.seed, self.trials)?;
        for c in &self.checks {
            let status = if c.failures.is_empty() { "PASS" } else { "FAIL" };
            writeln!(f, "{status} {}: {} passed, {} skipped, {} failed", c.name, c.passed, c.skipped, c.failures.len())?;
            for msg in c.failures.iter().take(3) {
                writeln!(f, "  {msg}")?;
            }
        }
        Ok(())
    }
}

enum Trial {
    Passed,
    Skipped,
}

type TrialResult = std::result::Result<Trial, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: crate::Error) -> String {
    e.to_string()
}

fn trial_rng(seed: u64, check: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ check.wrapping_mul(0x9e37_79b9_7f4a_7c15));
    rng.set_stream(trial as u64);
    rng
}

fn run_check(
    name: &'static str,
    index: u64,
    seed: u64,
    trials: usize,
    jobs: usize,
    f: fn(&mut ChaCha8Rng, usize) -> TrialResult,
) -> SelftestCheck {
    let jobs = jobs.clamp(1, trials.max(1));
    let mut results: Vec<(usize, TrialResult)> = thread::scope(|scope| {
        let handles: Vec<_> = (0..jobs)
            .map(|j| {
                scope.spawn(move || {
                    (j..trials)
                        .step_by(jobs)
                        .map(|t| (t, f(&mut trial_rng(seed, index, t), t)))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("selftest worker")).collect()
    });
    results.sort_by_key(|(t, _)| *t);
    let mut check = SelftestCheck { name, passed: 0, skipped: 0, failures: Vec::new() };
    for (t, r) in results {
        match r {
            Ok(Trial::Passed) => check.passed += 1,
            Ok(Trial::Skipped) => check.skipped += 1,
            Err(msg) => check.failures.push(format!("trial {t}: {msg}")),
        }
    }
    check
}

fn compiled(rng: &mut ChaCha8Rng, t: usize) -> std::result::Result<Option<CompiledSample<Rat>>, String> {
    let shape = ExprShape { d: 1 + t % 2, max_depth: 3, const_bound: 3 };
    random_compiled(rng, shape, 1 + t % 2, 2, 30).map_err(err)
}

fn linalg_identities(rng: &mut ChaCha8Rng, t: usize) -> TrialResult {
    let (n1, n2, n3, n4) = (1 + t % 3, 1 + (t / 3) % 3, 2, 1 + t % 2);
    let q: QMat = random_mat(rng, n1, n2, 4);
    let p: QMat = random_mat(rng, n3, n4, 4);
    let swapped = &(&perm_matrix::<Rat>(n3, n1) * &kron(&q, &p)) * &perm_matrix::<Rat>(n4, n2).transpose();
    ensure(kron(&p, &q) == swapped, || "Kronecker swap".into())?;
    let c: QMat = random_mat(rng, n2, 2, 4);
    let d: QMat = random_mat(rng, n4, 3, 4);
    ensure(&kron(&q, &p) * &kron(&c, &d) == kron(&(&q * &c), &(&p * &d)), || "mixed product".into())?;
    ensure(&perm_matrix::<Rat>(n1, n2) * &perm_matrix::<Rat>(n2, n1) == QMat::identity(n1 * n2), || "permutation inverse".into())?;
    let (a, a_inv) = random_invertible::<Rat, _>(rng, 3, 3);
    ensure(a_inv.det().map_err(err)? == a.det().map_err(err)?.recip_ref(), || "det of inverse".into())?;
    let m: QMat = random_mat(rng, 3, 4, 2);
    ensure(m.rank() + m.kernel_basis().len() == 4, || "rank-nullity".into())?;
    Ok(Trial::Passed)
}

fn expression_evaluation(rng: &mut ChaCha8Rng, _t: usize) -> TrialResult {
    let e = random_expr::<Rat, _>(rng, ExprShape { d: 2, max_depth: 4, const_bound: 3 });
    let x = random_tuple(rng, 2, 2, 2);
    let x2 = random_tuple(rng, 2, 1, 2);
    let (Ok(v), Ok(v2)) = (eval_expr(&e, &x), eval_expr(&e, &x2)) else { return Ok(Trial::Skipped) };
    ensure(eval_expr(&e, &x.direct_sum(&x2).map_err(err)?).map_err(err)? == v.direct_sum(&v2), || format!("{e}: direct sum"))?;
    let (t, t_inv) = random_invertible(rng, 2, 2);
    ensure(eval_expr(&e, &x.conjugate(&t, &t_inv)).map_err(err)? == &(&t * &v) * &t_inv, || format!("{e}: similarity"))?;
    ensure(eval_expr(&e, &x.kron_identity(2)).map_err(err)? == kron_identity(2, &v), || format!("{e}: amplification"))?;
    ensure(eval_expr_algebra(&e, x.mats(), &MatrixAlgebra::new(2)).ok() == Some(v), || format!("{e}: matrix algebra"))?;
    Ok(Trial::Passed)
}

fn realization_values(rng: &mut ChaCha8Rng, t: usize) -> TrialResult {
    let Some(c) = compiled(rng, t)? else { return Ok(Trial::Skipped) };
    let s = c.centre.level();
    let mut compared = false;
    for n in [s, 2 * s, 1, 3] {
        let x = random_tuple(rng, c.centre.d(), n, 2);
        let Ok(v) = eval_expr(&c.expr, &x) else { continue };
        let got = if n % s == 0 { c.realization.eval(&x) } else { c.realization.eval_at_level_n(&x) };
        ensure(got.map_err(|e| format!("{}: {e}", c.expr))? == v, || format!("{}: value at level {n}", c.expr))?;
        compared = true;
    }
    Ok(if compared { Trial::Passed } else { Trial::Skipped })
}

fn minimality(rng: &mut ChaCha8Rng, t: usize) -> TrialResult {
    let Some(c) = compiled(rng, t)? else { return Ok(Trial::Skipped) };
    let r = &c.realization;
    ensure(is_minimal(r), || format!("{}: not minimal", c.expr))?;
    ensure(find_similarity(r, &minimize(r)).is_some(), || format!("{}: minimize not idempotent", c.expr))?;
    let whole = minimize(&compile(&c.expr, &c.centre).map_err(err)?);
    ensure(find_similarity(&whole, r).is_some(), || format!("{}: synthesis orders differ", c.expr))?;
    let zero = minimize(&realize_sum(r, &realize_neg(r).map_err(err)?).map_err(err)?);
    ensure(zero.state_dim() == 0 && zero.feedthrough().is_zero(), || format!("{}: R - R is not zero", c.expr))?;
    Ok(Trial::Passed)
}

fn lla(rng: &mut ChaCha8Rng, t: usize) -> TrialResult {
    let Some(c) = compiled(rng, t)? else { return Ok(Trial::Skipped) };
    ensure(lla_check(&c.realization).pass(), || format!("{}: basis check", c.expr))?;
    let ext = lla_check_extended(&c.realization, 1, 2, 2, 2, rng).map_err(err)?;
    ensure(ext.pass(), || format!("{}: rectangular check", c.expr))?;
    if c.centre.level() <= 2 {
        let la = la_check_series(|w, z| tt_coefficient(&c.realization, w, z), &c.centre, 1).map_err(err)?;
        ensure(la.pass(), || format!("{}: lost-abbey conditions", c.expr))?;
    }
    Ok(Trial::Passed)
}

fn series(rng: &mut ChaCha8Rng, t: usize) -> TrialResult {
    let Some(c) = compiled(rng, t)? else { return Ok(Trial::Skipped) };
    let x = nilpotent_point(rng, &c.centre, 1 + t % 3, 2);
    let v = c.realization.eval(&x).map_err(err)?;
    ensure(tt_series_eval(&c.realization, &x).map_err(err)? == v, || format!("{}: Neumann series", c.expr))?;
    ensure(tt_series_eval_bruteforce(&c.realization, &x).map_err(err)? == v, || format!("{}: faux powers", c.expr))?;
    Ok(Trial::Passed)
}

fn differences(rng: &mut ChaCha8Rng, t: usize) -> TrialResult {
    let Some(c) = compiled(rng, t)? else { return Ok(Trial::Skipped) };
    let r = &c.realization;
    let cert = LlaCertified::certify(r).map_err(err)?;
    let Some(x) = sample_in_domain(r, 1, 2, rng).map_err(err)? else { return Ok(Trial::Skipped) };
    let n = x.level();
    for len in 0..=2 {
        for w in Word::all(r.d(), len) {
            let dirs: Vec<QMat> = (0..len).map(|_| random_mat(rng, n, n, 2)).collect();
            let mut pts = vec![x.clone()];
            pts.extend(std::iter::repeat_n(r.centre().clone(), len));
            let block = delta_block(|p| r.eval(p), &w, &pts, &dirs).map_err(err)?;
            ensure(block == delta_closed_form(&cert, &w, &x, &dirs).map_err(err)?, || format!("{}: word {w}", c.expr))?;
        }
    }
    Ok(Trial::Passed)
}

fn nc_structure(rng: &mut ChaCha8Rng, t: usize) -> TrialResult {
    let Some(c) = compiled(rng, t)? else { return Ok(Trial::Skipped) };
    let rep = nc_property_harness(&c.realization, 2, 2, rng).map_err(err)?;
    ensure(rep.pass(), || format!("{}: {rep}", c.expr))?;
    Ok(Trial::Passed)
}

/// Runs every check for `trials` trials using up to `jobs` threads.
pub fn run_selftest(seed: u64, trials: usize, jobs: usize) -> SelftestReport {
    let checks: [(&'static str, fn(&mut ChaCha8Rng, usize) -> TrialResult); 8] = [
        ("linear algebra identities", linalg_identities),
        ("expression evaluation", expression_evaluation),
        ("realization values", realization_values),
        ("minimality and similarity", minimality),
        ("lost-abbey equations", lla),
        ("Taylor-Taylor series", series),
        ("difference-differential operators", differences),
        ("nc-function structure", nc_structure),
    ];
    let checks = checks
        .iter()
        .enumerate()
        .map(|(i, &(name, f))| run_check(name, i as u64, seed, trials, jobs, f))
        .collect();
    SelftestReport { seed, trials, checks }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_run_passes_and_ignores_thread_count() {
        let one = run_selftest(42, 4, 1);
        assert!(one.pass(), "{one}");
        assert_eq!(one, run_selftest(42, 4, 3));
    }
}
