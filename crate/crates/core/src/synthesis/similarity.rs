use std::collections::VecDeque;

use crate::linalg::Mat;
use crate::realization::FMRealization;
use crate::scalar::Scalar;

use super::Subspace;

/// Whether `T` is invertible and carries `R_1` to `R_2`:
/// `C_2 T = C_1`, `T B_1 = B_2`, `T A_1 = A_2 T` on every basis unit, with
/// equal centres and feedthroughs.
pub fn check_similarity<T: Scalar>(r1: &FMRealization<T>, r2: &FMRealization<T>, t: &Mat<T>) -> bool {
    let l = r1.state_dim();
    if r1.centre() != r2.centre() || r1.feedthrough() != r2.feedthrough() || r2.state_dim() != l {
        return false;
    }
    if t.shape() != (l, l) || t.rank() != l {
        return false;
    }
    if &(r2.output() * t) != r1.output() {
        return false;
    }
    let b_ok = r1.b().iter().zip(r2.b()).all(|(b1, b2)| b1.images().iter().zip(b2.images()).all(|(x, y)| &(t * x) == y));
    let a_ok = r1
        .a()
        .iter()
        .zip(r2.a())
        .all(|(a1, a2)| a1.images().iter().zip(a2.images()).all(|(x, y)| t * x == y * t));
    b_ok && a_ok
}

/// A state-space isomorphism `T` from `R_1` to `R_2`, when one exists and
/// `R_1` is controllable.
///
/// Builds a basis of `K^L` from reachable vectors `A(Z_1)...A(Z_j) B(Z) e_c`
/// of `R_1`, replays the same words in `R_2`, and takes `T = V_2 V_1^{-1}`.
/// Any similarity must map each reachable vector to its replay, so `T` is
/// unique; it is returned only after all conjugation relations are verified.
pub fn find_similarity<T: Scalar>(r1: &FMRealization<T>, r2: &FMRealization<T>) -> Option<Mat<T>> {
    let l = r1.state_dim();
    if r1.centre() != r2.centre() || r1.feedthrough() != r2.feedthrough() || r2.state_dim() != l {
        return None;
    }
    if l == 0 {
        return Some(Mat::identity(0));
    }
    let images = |r: &FMRealization<T>| -> (Vec<Mat<T>>, Vec<Mat<T>>) {
        (
            r.a().iter().flat_map(|m| m.images().iter().cloned()).collect(),
            r.b().iter().flat_map(|m| m.images().iter().cloned()).collect(),
        )
    };
    let (a1, b1) = images(r1);
    let (a2, b2) = images(r2);

    let mut span = Subspace::zero(l);
    let (mut v1, mut v2) = (Vec::new(), Vec::new());
    let mut queue = VecDeque::new();
    for (g1, g2) in b1.iter().zip(&b2) {
        for c in 0..g1.cols() {
            let x = g1.column(c);
            if span.insert(x.clone()) {
                queue.push_back((Mat::column_vector(x), Mat::column_vector(g2.column(c))));
            }
        }
    }
    while let Some((x1, x2)) = queue.pop_front() {
        v1.push(x1.clone());
        v2.push(x2.clone());
        for (op1, op2) in a1.iter().zip(&a2) {
            let y = op1 * &x1;
            if span.insert(y.column(0)) {
                queue.push_back((y, op2 * &x2));
            }
        }
    }
    if span.dim() < l {
        return None;
    }
    let m1 = Mat::hstack(&v1.iter().collect::<Vec<_>>()).ok()?;
    let m2 = Mat::hstack(&v2.iter().collect::<Vec<_>>()).ok()?;
    let t = &m2 * &m1.inverse().ok()?;
    check_similarity(r1, r2, &t).then_some(t)
}
