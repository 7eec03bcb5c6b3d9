use rand::Rng;

use crate::error::{Error, Result};
use crate::expr::{eval_expr, NcExpr};
use crate::linalg::Mat;
use crate::point::MatTuple;
use crate::sample::random_tuple;
use crate::scalar::Scalar;

/// Outcome of a sampling comparison. Agreement on samples is evidence, not a
/// proof of equivalence.
#[derive(Clone, PartialEq)]
pub enum Verdict<T> {
    /// Every sampled point in both domains gave equal values.
    NoCounterexample { compared: usize, skipped: usize },
    Counterexample { level: usize, point: MatTuple<T>, left: Mat<T>, right: Mat<T> },
}

impl<T: std::fmt::Display> std::fmt::Debug for Verdict<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::NoCounterexample { compared, skipped } => {
                write!(f, "NoCounterexample {{ compared: {compared}, skipped: {skipped} }}")
            }
            Verdict::Counterexample { level, point, left, right } => {
                write!(f, "Counterexample {{ level: {level}, point: {point:?}, left: {left}, right: {right} }}")
            }
        }
    }
}

impl<T> Verdict<T> {
    pub fn found_counterexample(&self) -> bool {
        matches!(self, Verdict::Counterexample { .. })
    }
}

/// Compares two expressions on `trials` random points per level, entries in
/// `[-bound, bound]`. Points outside either domain are skipped.
pub fn equivalence_check<T: Scalar, R: Rng + ?Sized>(
    e1: &NcExpr<T>,
    e2: &NcExpr<T>,
    trials: usize,
    levels: &[usize],
    bound: i64,
    rng: &mut R,
) -> Result<Verdict<T>> {
    let d = e1.arity().max(e2.arity()).max(1);
    let (mut compared, mut skipped) = (0, 0);
    for &level in levels {
        for _ in 0..trials {
            let x = random_tuple(rng, d, level, bound);
            match (eval_expr(e1, &x), eval_expr(e2, &x)) {
                (Ok(a), Ok(b)) if a == b => compared += 1,
                (Ok(left), Ok(right)) => return Ok(Verdict::Counterexample { level, point: x, left, right }),
                (Err(Error::Domain { .. }), _) | (_, Err(Error::Domain { .. })) => skipped += 1,
                (Err(e), _) | (_, Err(e)) => return Err(e),
            }
        }
    }
    Ok(Verdict::NoCounterexample { compared, skipped })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn hidden_identity_is_not_refuted() {
        let e1 = parse("x2*(x1*x2)^-1*x1 + x1*x2").unwrap();
        let e2 = parse("1 + x1*x2").unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let v = equivalence_check(&e1, &e2, 30, &[1, 2, 3], 3, &mut rng).unwrap();
        assert!(matches!(v, Verdict::NoCounterexample { compared, .. } if compared > 50), "{v:?}");
    }

    #[test]
    fn distinct_variables_differ_at_level_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let v = equivalence_check(&parse("x1").unwrap(), &parse("x2").unwrap(), 20, &[1], 3, &mut rng).unwrap();
        assert!(matches!(v, Verdict::Counterexample { level: 1, .. }));
    }

    #[test]
    fn products_commute_only_at_level_one() {
        let (e1, e2) = (parse("x1*x2").unwrap(), parse("x2*x1").unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        assert!(!equivalence_check(&e1, &e2, 20, &[1], 3, &mut rng).unwrap().found_counterexample());
        let v = equivalence_check(&e1, &e2, 20, &[2], 3, &mut rng).unwrap();
        assert!(matches!(v, Verdict::Counterexample { level: 2, .. }));
    }
}
