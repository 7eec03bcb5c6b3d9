//! Linearized lost-abbey equations for the coefficients of a realization.
//!
//! With `[S, Y]_k = S Y_k - Y_k S`, `ΣA(S) = Σ_k A_k([S, Y_k])` and
//! `ΣB(S) = Σ_k B_k([S, Y_k])`, the six equations are
//!
//! ```text
//! (a) S D - D S                                   = C ΣB(S)
//! (b) S C B_i(Z1) - C B_i(S Z1)                   = C ΣA(S) B_i(Z1)
//! (c) S C A_i(Z1) - C A_i(S Z1)                   = C ΣA(S) A_i(Z1)
//! (f) B_i(Z1 S) - B_i(Z1) S                       = A_i(Z1) ΣB(S)
//! (e) A_i(Z1 S) B_j(Z2) - A_i(Z1) B_j(S Z2)       = A_i(Z1) ΣA(S) B_j(Z2)
//! (d) A_i(Z1 S) A_j(Z2) - A_i(Z1) A_j(S Z2)       = A_i(Z1) ΣA(S) A_j(Z2)
//! ```
//!
//! Each side is multilinear in `S, Z1, Z2`, so checking matrix units is
//! exhaustive.

use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg::{kron_identity, BlockLinearMap, Mat};
use crate::realization::FMRealization;
use crate::sample::random_mat;
use crate::scalar::Scalar;
use crate::synthesis::is_minimal;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LlaEquation {
    A,
    B,
    C,
    F,
    E,
    D,
}

impl LlaEquation {
    pub const ALL: [LlaEquation; 6] =
        [LlaEquation::A, LlaEquation::B, LlaEquation::C, LlaEquation::F, LlaEquation::E, LlaEquation::D];

    pub fn tag(self) -> char {
        match self {
            LlaEquation::A => 'a',
            LlaEquation::B => 'b',
            LlaEquation::C => 'c',
            LlaEquation::F => 'f',
            LlaEquation::E => 'e',
            LlaEquation::D => 'd',
        }
    }
}

impl fmt::Display for LlaEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.tag())
    }
}

/// Where a violation was found: basis units (flat index `p s + q` of
/// `E_pq`) for the exhaustive check, or a trial number for the randomized
/// rectangular check. Variable indices are 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LlaWitness {
    Basis { s: usize, z1: Option<usize>, z2: Option<usize>, i1: Option<usize>, i2: Option<usize> },
    Trial { trial: usize, i1: Option<usize>, i2: Option<usize> },
}

#[derive(Clone, PartialEq)]
pub struct LlaViolation<T> {
    pub equation: LlaEquation,
    pub witness: LlaWitness,
    /// Left side minus right side; never zero.
    pub residual: Mat<T>,
}

impl<T: fmt::Display> fmt::Debug for LlaViolation<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) at {:?}: {}", self.equation, self.witness, self.residual)
    }
}

#[derive(Clone, PartialEq)]
pub struct LlaReport<T> {
    pub violations: Vec<LlaViolation<T>>,
    /// Whether the checked realization was controllable and observable.
    pub minimal: bool,
}

impl<T: fmt::Display> fmt::Debug for LlaReport<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LlaReport").field("minimal", &self.minimal).field("violations", &self.violations).finish()
    }
}

impl<T> LlaReport<T> {
    pub fn pass(&self) -> bool {
        self.violations.is_empty()
    }

    /// What the outcome says about the function behind the coefficients.
    pub fn interpretation(&self) -> &'static str {
        match (self.pass(), self.minimal) {
            (true, _) => "the coefficients satisfy the linearized lost-abbey equations",
            (false, true) => "the realization is minimal, so its series is not an nc function near the centre",
            (false, false) => {
                "the realization is not minimal; a failure here does not show that its series is not an nc function"
            }
        }
    }
}

/// Matrix units `E_pq` indexed by `p s + q`.
pub fn unit_label(k: usize, s: usize) -> String {
    format!("E_{}{}", k / s + 1, k % s + 1)
}

/// `E_a E_b` as a flat index, when nonzero.
fn unit_product(a: usize, b: usize, s: usize) -> Option<usize> {
    (a % s == b / s).then_some((a / s) * s + b % s)
}

fn image_or_zero<T: Scalar>(map: &BlockLinearMap<T>, k: Option<usize>) -> Mat<T> {
    match k {
        Some(k) => map.image_flat(k).clone(),
        None => {
            let (r, c) = map.out_shape();
            Mat::zeros(r, c)
        }
    }
}

/// Exhaustive basis check of all six equations.
pub fn lla_check<T: Scalar>(r: &FMRealization<T>) -> LlaReport<T> {
    let (s, d, l) = (r.s(), r.d(), r.state_dim());
    let units: Vec<Mat<T>> = (0..s * s).map(|k| Mat::unit(s, s, k / s, k % s)).collect();
    let (c, dd) = (r.output(), r.feedthrough());
    let mut violations = Vec::new();
    let mut report = |equation, witness, residual: Mat<T>| {
        if !residual.is_zero() {
            violations.push(LlaViolation { equation, witness, residual });
        }
    };
    for (si, su) in units.iter().enumerate() {
        let comms: Vec<Mat<T>> = r.centre().mats().iter().map(|y| su.commutator(y)).collect();
        let mut sum_a = Mat::zeros(l, l);
        let mut sum_b = Mat::zeros(l, s);
        for k in 0..d {
            sum_a = &sum_a + &r.a()[k].apply(&comms[k]);
            sum_b = &sum_b + &r.b()[k].apply(&comms[k]);
        }
        let basis = |z1, z2, i1, i2| LlaWitness::Basis { s: si, z1, z2, i1, i2 };
        report(LlaEquation::A, basis(None, None, None, None), &(&(su * dd) - &(dd * su)) - &(c * &sum_b));
        if l == 0 {
            continue;
        }
        let c_sum_a = c * &sum_a;
        for z1 in 0..s * s {
            let s_z1 = unit_product(si, z1, s);
            let z1_s = unit_product(z1, si, s);
            for i1 in 0..d {
                let (a1, b1) = (&r.a()[i1], &r.b()[i1]);
                let a1z = a1.image_flat(z1);
                let b1z = b1.image_flat(z1);
                let w = |z2, i2| basis(Some(z1), z2, Some(i1 + 1), i2);
                let lhs = &(su * &(c * b1z)) - &(c * &image_or_zero(b1, s_z1));
                report(LlaEquation::B, w(None, None), &lhs - &(&c_sum_a * b1z));
                let lhs = &(su * &(c * a1z)) - &(c * &image_or_zero(a1, s_z1));
                report(LlaEquation::C, w(None, None), &lhs - &(&c_sum_a * a1z));
                let lhs = &image_or_zero(b1, z1_s) - &(b1z * su);
                report(LlaEquation::F, w(None, None), &lhs - &(a1z * &sum_b));
                let a1_z1s = image_or_zero(a1, z1_s);
                let a1_sum = a1z * &sum_a;
                for z2 in 0..s * s {
                    let s_z2 = unit_product(si, z2, s);
                    for i2 in 0..d {
                        let (a2, b2) = (&r.a()[i2], &r.b()[i2]);
                        let lhs = &(&a1_z1s * b2.image_flat(z2)) - &(a1z * &image_or_zero(b2, s_z2));
                        report(LlaEquation::E, w(Some(z2), Some(i2 + 1)), &lhs - &(&a1_sum * b2.image_flat(z2)));
                        let lhs = &(&a1_z1s * a2.image_flat(z2)) - &(a1z * &image_or_zero(a2, s_z2));
                        report(LlaEquation::D, w(Some(z2), Some(i2 + 1)), &lhs - &(&a1_sum * a2.image_flat(z2)));
                    }
                }
            }
        }
    }
    violations.sort_by_key(|v| v.equation);
    LlaReport { violations, minimal: is_minimal(r) }
}

/// Randomized check of the rectangular forms: `S` is `sn x sm`, `Z1` is
/// `sm x sm`, `Z2` is `sn x sn`, and `[S, Y_k]` becomes
/// `S (I_m (x) Y_k) - (I_n (x) Y_k) S`.
pub fn lla_check_extended<T: Scalar, R: Rng + ?Sized>(
    r: &FMRealization<T>,
    n: usize,
    m: usize,
    trials: usize,
    bound: i64,
    rng: &mut R,
) -> Result<LlaReport<T>> {
    let (s, d, l) = (r.s(), r.d(), r.state_dim());
    if n == 0 || m == 0 {
        return Err(Error::Input("block levels must be positive".into()));
    }
    let ba = |map: &BlockLinearMap<T>, x: &Mat<T>| map.block_apply(x);
    let (cn, cm) = (kron_identity(n, r.output()), kron_identity(m, r.output()));
    let mut violations = Vec::new();
    for trial in 0..trials {
        let sm: Mat<T> = random_mat(rng, s * n, s * m, bound);
        let z1: Mat<T> = random_mat(rng, s * m, s * m, bound);
        let z2: Mat<T> = random_mat(rng, s * n, s * n, bound);
        let mut sum_a = Mat::zeros(l * n, l * m);
        let mut sum_b = Mat::zeros(l * n, s * m);
        for k in 0..d {
            let y = r.centre().get(k);
            let comm = &(&sm * &kron_identity(m, y)) - &(&kron_identity(n, y) * &sm);
            sum_a = &sum_a + &ba(&r.a()[k], &comm)?;
            sum_b = &sum_b + &ba(&r.b()[k], &comm)?;
        }
        let mut report = |equation, i1, i2, residual: Mat<T>| {
            if !residual.is_zero() {
                violations.push(LlaViolation { equation, witness: LlaWitness::Trial { trial, i1, i2 }, residual });
            }
        };
        let dd = r.feedthrough();
        let lhs = &(&sm * &kron_identity(m, dd)) - &(&kron_identity(n, dd) * &sm);
        report(LlaEquation::A, None, None, &lhs - &(&cn * &sum_b));
        if l == 0 {
            continue;
        }
        let s_z1 = &sm * &z1;
        let z2_s = &z2 * &sm;
        let cn_sum_a = &cn * &sum_a;
        for i1 in 0..d {
            let (a1, b1) = (&r.a()[i1], &r.b()[i1]);
            let (a1z1, b1z1) = (ba(a1, &z1)?, ba(b1, &z1)?);
            let lhs = &(&(&sm * &cm) * &b1z1) - &(&cn * &ba(b1, &s_z1)?);
            report(LlaEquation::B, Some(i1 + 1), None, &lhs - &(&cn_sum_a * &b1z1));
            let lhs = &(&(&sm * &cm) * &a1z1) - &(&cn * &ba(a1, &s_z1)?);
            report(LlaEquation::C, Some(i1 + 1), None, &lhs - &(&cn_sum_a * &a1z1));
            for i2 in 0..d {
                let (a2, b2) = (&r.a()[i2], &r.b()[i2]);
                let a2z2 = ba(a2, &z2)?;
                let w = (Some(i1 + 1), Some(i2 + 1));
                if i1 == 0 {
                    let lhs = &ba(b2, &z2_s)? - &(&ba(b2, &z2)? * &sm);
                    report(LlaEquation::F, Some(i2 + 1), None, &lhs - &(&a2z2 * &sum_b));
                }
                let a2_sum = &a2z2 * &sum_a;
                let lhs = &(&ba(a2, &z2_s)? * &b1z1) - &(&a2z2 * &ba(b1, &s_z1)?);
                report(LlaEquation::E, w.1, w.0, &lhs - &(&a2_sum * &b1z1));
                let lhs = &(&ba(a2, &z2_s)? * &a1z1) - &(&a2z2 * &ba(a1, &s_z1)?);
                report(LlaEquation::D, w.1, w.0, &lhs - &(&a2_sum * &a1z1));
            }
        }
    }
    violations.sort_by_key(|v| v.equation);
    Ok(LlaReport { violations, minimal: is_minimal(r) })
}

/// A realization known to satisfy the linearized lost-abbey equations.
#[derive(Clone, Copy)]
pub struct LlaCertified<'a, T>(&'a FMRealization<T>);

impl<'a, T: Scalar> LlaCertified<'a, T> {
    /// Runs [`lla_check`]; fails with [`Error::LlaViolation`].
    pub fn certify(r: &'a FMRealization<T>) -> Result<Self> {
        if lla_check(r).pass() {
            Ok(LlaCertified(r))
        } else {
            Err(Error::LlaViolation)
        }
    }

    pub fn realization(&self) -> &'a FMRealization<T> {
        self.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;
    use crate::point::MatTuple;
    use crate::synthesis::{realize_expr, realize_var};
    use crate::{QMat, Rat};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn off_diagonal_feedthrough() -> FMRealization<Rat> {
        FMRealization::new(
            MatTuple::new(vec![QMat::zeros(2, 2)]).unwrap(),
            QMat::from_ints(&[[0, 1], [0, 0]]),
            QMat::identity(2),
            vec![BlockLinearMap::zero(2, 2, 2)],
            vec![BlockLinearMap::identity(2)],
        )
        .unwrap()
    }

    #[test]
    fn counterexample_is_flagged_at_e11() {
        let rep = lla_check(&off_diagonal_feedthrough());
        assert!(!rep.pass());
        assert!(rep.violations.iter().all(|v| v.equation == LlaEquation::A));
        let at_e11 = rep
            .violations
            .iter()
            .find(|v| matches!(v.witness, LlaWitness::Basis { s: 0, .. }))
            .expect("violation at E_11");
        assert_eq!(at_e11.residual, QMat::from_ints(&[[0, 1], [0, 0]]));
        assert!(rep.minimal);
    }

    #[test]
    fn coordinates_and_compiled_expressions_pass() {
        let y = MatTuple::new(vec![QMat::from_ints(&[[1, 2], [0, -1]]), QMat::from_ints(&[[0, 0], [1, 2]])]).unwrap();
        assert!(lla_check(&realize_var(1, &y).unwrap()).pass());
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for text in ["x1*x2 - 3*x2*x1", "(1 + x1*x2)^-1 * x1", "(x1 + 4)^-1 + (x2 + 5)^-1*x1"] {
            let r = realize_expr(&parse(text).unwrap(), &y).unwrap();
            let rep = lla_check(&r);
            assert!(rep.pass(), "{text}: {rep:?}");
            assert!(lla_check_extended(&r, 1, 2, 5, 3, &mut rng).unwrap().pass(), "{text}");
            assert!(lla_check_extended(&r, 2, 1, 5, 3, &mut rng).unwrap().pass(), "{text}");
        }
    }

    #[test]
    fn extended_check_catches_counterexample() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let rep = lla_check_extended(&off_diagonal_feedthrough(), 1, 2, 10, 3, &mut rng).unwrap();
        assert!(!rep.pass());
    }

    #[test]
    fn unit_products() {
        // E_12 E_21 = E_11, E_21 E_12 = E_22, E_12 E_12 = 0
        assert_eq!(unit_product(1, 2, 2), Some(0));
        assert_eq!(unit_product(2, 1, 2), Some(3));
        assert_eq!(unit_product(1, 1, 2), None);
        assert_eq!(unit_label(1, 2), "E_12");
    }
}
