//! Lost-abbey conditions on a family of multilinear coefficients `f_ω`.
//!
//! For every matrix unit `S` and basis tuple `Z`:
//!
//! ```text
//! S f_e - f_e S                           = Σ_k f_{g_k}([S, Y_k])
//! S f_ω(Z) - f_ω(S Z_1, ...)              = Σ_k f_{g_k ω}([S, Y_k], Z)
//! f_ω(..., Z_l S) - f_ω(Z) S              = Σ_k f_{ω g_k}(Z, [S, Y_k])
//! f_ω(.., Z_j S, Z_{j+1}, ..) - f_ω(.., Z_j, S Z_{j+1}, ..)
//!                                         = Σ_k f_{.. g_k ..}(.., Z_j, [S, Y_k], Z_{j+1}, ..)
//! ```

use std::fmt;

use crate::error::Result;
use crate::linalg::Mat;
use crate::point::MatTuple;
use crate::scalar::Scalar;

use super::Word;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LaCondition {
    Constant,
    Left,
    Right,
    /// Between positions `j` and `j + 1` (1-based).
    Inner(usize),
}

#[derive(Clone, PartialEq)]
pub struct LaViolation<T> {
    pub condition: LaCondition,
    pub word: Word,
    /// Flat index of the matrix unit `S`.
    pub s_unit: usize,
    pub z_units: Vec<usize>,
    pub residual: Mat<T>,
}

impl<T: fmt::Display> fmt::Debug for LaViolation<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} {} S={} Z={:?}: {}", self.condition, self.word, self.s_unit, self.z_units, self.residual)
    }
}

#[derive(Clone, PartialEq)]
pub struct LaReport<T> {
    pub violations: Vec<LaViolation<T>>,
    /// Number of identities evaluated.
    pub checked: usize,
}

impl<T: fmt::Display> fmt::Debug for LaReport<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LaReport").field("checked", &self.checked).field("violations", &self.violations).finish()
    }
}

impl<T> LaReport<T> {
    pub fn pass(&self) -> bool {
        self.violations.is_empty()
    }
}

fn tuples(s2: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out.iter().flat_map(|t| (0..s2).map(move |u| [t.as_slice(), &[u]].concat())).collect();
    }
    out
}

/// Checks the conditions for all words of length at most `maxlen` (the
/// right-hand sides use words one letter longer).
pub fn la_check_series<T: Scalar>(
    coeff: impl Fn(&Word, &[Mat<T>]) -> Result<Mat<T>>,
    centre: &MatTuple<T>,
    maxlen: usize,
) -> Result<LaReport<T>> {
    let (s, d) = (centre.level(), centre.d());
    let units: Vec<Mat<T>> = (0..s * s).map(|k| Mat::unit(s, s, k / s, k % s)).collect();
    let mut violations = Vec::new();
    let mut checked = 0;
    for (si, su) in units.iter().enumerate() {
        let comms: Vec<Mat<T>> = centre.mats().iter().map(|y| su.commutator(y)).collect();
        // Σ_k f_{ω with g_k inserted at `at`}(Z with [S, Y_k] inserted at `at`)
        let inserted = |w: &Word, z: &[Mat<T>], at: usize| -> Result<Mat<T>> {
            let mut acc: Option<Mat<T>> = None;
            for (k, c) in comms.iter().enumerate() {
                let mut args = z.to_vec();
                args.insert(at, c.clone());
                let v = coeff(&w.insert(at, k + 1), &args)?;
                acc = Some(match acc {
                    Some(a) => &a + &v,
                    None => v,
                });
            }
            Ok(acc.expect("at least one variable"))
        };
        let mut push = |condition, word: &Word, z_units: &[usize], residual: Mat<T>| {
            checked += 1;
            if !residual.is_zero() {
                violations.push(LaViolation { condition, word: word.clone(), s_unit: si, z_units: z_units.to_vec(), residual });
            }
        };
        let empty = Word::empty();
        let f0 = coeff(&empty, &[])?;
        let res = &(&(su * &f0) - &(&f0 * su)) - &inserted(&empty, &[], 0)?;
        push(LaCondition::Constant, &empty, &[], res);
        for len in 1..=maxlen {
            for w in Word::all(d, len) {
                for zt in tuples(s * s, len) {
                    let z: Vec<Mat<T>> = zt.iter().map(|&u| units[u].clone()).collect();
                    let fz = coeff(&w, &z)?;
                    let mut moved = z.clone();
                    moved[0] = su * &z[0];
                    let res = &(&(su * &fz) - &coeff(&w, &moved)?) - &inserted(&w, &z, 0)?;
                    push(LaCondition::Left, &w, &zt, res);
                    let mut moved = z.clone();
                    moved[len - 1] = &z[len - 1] * su;
                    let res = &(&coeff(&w, &moved)? - &(&fz * su)) - &inserted(&w, &z, len)?;
                    push(LaCondition::Right, &w, &zt, res);
                    for j in 1..len {
                        let mut left = z.clone();
                        left[j - 1] = &z[j - 1] * su;
                        let mut right = z.clone();
                        right[j] = su * &z[j];
                        let res = &(&coeff(&w, &left)? - &coeff(&w, &right)?) - &inserted(&w, &z, j)?;
                        push(LaCondition::Inner(j), &w, &zt, res);
                    }
                }
            }
        }
    }
    Ok(LaReport { violations, checked })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::tt_coefficient;
    use crate::expr::parse;
    use crate::linalg::BlockLinearMap;
    use crate::realization::FMRealization;
    use crate::synthesis::realize_expr;
    use crate::{QMat, Rat};

    #[test]
    fn compiled_series_satisfy_conditions() {
        let y = MatTuple::new(vec![QMat::from_ints(&[[0, 1], [0, 0]]), QMat::from_ints(&[[0, 0], [1, 0]])]).unwrap();
        let r = realize_expr(&parse("x1*x2 + (2 + x2)^-1").unwrap(), &y).unwrap();
        let rep = la_check_series(|w, z| tt_coefficient(&r, w, z), &y, 2).unwrap();
        assert!(rep.pass(), "{rep:?}");
        assert!(rep.checked > 100);
    }

    #[test]
    fn scalar_centre_makes_conditions_tautological() {
        // with s = 1 every commutator vanishes, so any coefficients pass as
        // long as they are multilinear
        let y = MatTuple::new(vec![QMat::from_ints(&[[3]])]).unwrap();
        let rep = la_check_series(|w, z: &[QMat]| Ok(z.iter().fold(QMat::scalar(1, &Rat::from_int(w.len() as i64 + 1)), |a, b| &a * b)), &y, 3)
            .unwrap();
        assert!(rep.pass());
    }

    #[test]
    fn counterexample_fails_constant_condition() {
        let r = FMRealization::new(
            MatTuple::new(vec![QMat::zeros(2, 2)]).unwrap(),
            QMat::from_ints(&[[0, 1], [0, 0]]),
            QMat::identity(2),
            vec![BlockLinearMap::zero(2, 2, 2)],
            vec![BlockLinearMap::identity(2)],
        )
        .unwrap();
        let rep = la_check_series(|w, z| tt_coefficient(&r, w, z), r.centre(), 1).unwrap();
        let v = rep.violations.iter().find(|v| v.condition == LaCondition::Constant && v.s_unit == 0).unwrap();
        assert_eq!(v.residual, QMat::from_ints(&[[0, 1], [0, 0]]));
    }
}
