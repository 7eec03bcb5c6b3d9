use std::fmt;

use rand::Rng;

use crate::error::Result;
use crate::linalg::Mat;
use crate::point::MatTuple;
use crate::realization::FMRealization;
use crate::sample::{random_invertible, random_mat, random_tuple};
use crate::scalar::Scalar;
use crate::synthesis::is_minimal;

use super::lla_check;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HarnessCheck {
    pub name: &'static str,
    pub checked: usize,
    pub failed: usize,
    /// Trials abandoned because no in-domain sample was found.
    pub skipped: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HarnessReport {
    pub checks: Vec<HarnessCheck>,
    /// Similarity invariance is only asserted for minimal realizations
    /// passing the linearized lost-abbey check.
    pub similarity_applicable: bool,
}

impl HarnessReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.failed == 0)
    }
}

impl fmt::Display for HarnessReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{}: {} checked, {} failed, {} skipped", c.name, c.checked, c.failed, c.skipped)?;
        }
        if !self.similarity_applicable {
            writeln!(f, "similarity: not applicable (realization not minimal or fails the L-LA check)")?;
        }
        Ok(())
    }
}

/// A random point of level `s m` in the domain, after a few attempts.
pub fn sample_in_domain<T: Scalar, R: Rng + ?Sized>(
    r: &FMRealization<T>,
    m: usize,
    bound: i64,
    rng: &mut R,
) -> Result<Option<MatTuple<T>>> {
    for _ in 0..20 {
        let x = random_tuple(rng, r.d(), r.s() * m, bound);
        if r.in_domain(&x)? {
            return Ok(Some(x));
        }
    }
    Ok(None)
}

/// Samples direct sums, upper triangular augmentations, column-embedding
/// intertwiners and (when applicable) similarities, checking domain
/// membership and exact value relations.
pub fn nc_property_harness<T: Scalar, R: Rng + ?Sized>(
    r: &FMRealization<T>,
    trials: usize,
    bound: i64,
    rng: &mut R,
) -> Result<HarnessReport> {
    let s = r.s();
    let similarity_applicable = is_minimal(r) && lla_check(r).pass();
    let mut sums = HarnessCheck { name: "direct sums", ..Default::default() };
    let mut upper = HarnessCheck { name: "upper triangular", ..Default::default() };
    let mut inter = HarnessCheck { name: "intertwining", ..Default::default() };
    let mut sim = HarnessCheck { name: "similarity", ..Default::default() };
    let tally = |c: &mut HarnessCheck, ok: bool| {
        c.checked += 1;
        if !ok {
            c.failed += 1;
        }
    };
    for trial in 0..trials {
        let (m1, m2) = (1 + trial % 2, 1 + (trial / 2) % 2);
        let (Some(x1), Some(x2)) = (sample_in_domain(r, m1, bound, rng)?, sample_in_domain(r, m2, bound, rng)?) else {
            for c in [&mut sums, &mut upper, &mut inter, &mut sim] {
                c.skipped += 1;
            }
            continue;
        };
        let (v1, v2) = (r.eval(&x1)?, r.eval(&x2)?);
        let (n1, n2) = (s * m1, s * m2);
        let embed = Mat::vstack(&[&Mat::identity(n1), &Mat::zeros(n2, n1)])?;

        let sum_pt = x1.direct_sum(&x2)?;
        let sum_ok = r.in_domain(&sum_pt)?;
        let sum_val = if sum_ok { Some(r.eval(&sum_pt)?) } else { None };
        tally(&mut sums, sum_val.as_ref() == Some(&v1.direct_sum(&v2)));

        let corner: Vec<Mat<T>> = (0..r.d()).map(|_| random_mat(rng, n1, n2, bound)).collect();
        let up_pt = x1.upper_triangular(&corner, &x2)?;
        let up_val = if r.in_domain(&up_pt)? { Some(r.eval(&up_pt)?) } else { None };
        tally(
            &mut upper,
            up_val.as_ref().is_some_and(|v| {
                v.block(0, 0, n1, n1) == v1 && v.block(n1, n1, n2, n2) == v2 && v.block(n1, 0, n2, n1).is_zero()
            }),
        );

        let intertwines = |v: &Option<Mat<T>>| v.as_ref().is_some_and(|v| (v * &embed) == (&embed * &v1));
        tally(&mut inter, intertwines(&sum_val) && intertwines(&up_val));

        if similarity_applicable {
            let (t, t_inv) = random_invertible(rng, n1, bound);
            let conj = x1.conjugate(&t, &t_inv);
            let ok = r.in_domain(&conj)? && r.eval(&conj)? == &(&t * &v1) * &t_inv;
            tally(&mut sim, ok);
        }
    }
    let mut checks = vec![sums, upper, inter];
    if similarity_applicable {
        checks.push(sim);
    }
    Ok(HarnessReport { checks, similarity_applicable })
}
