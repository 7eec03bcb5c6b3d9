//! Seeded random generators for matrices, points and expressions.

use rand::Rng;

use crate::error::{Error, Result};
use crate::expr::NcExpr;
use crate::linalg::Mat;
use crate::point::MatTuple;
use crate::realization::FMRealization;
use crate::scalar::Scalar;
use crate::synthesis::realize_expr;

/// Matrix with integer entries drawn uniformly from `[-bound, bound]`.
pub fn random_mat<T: Scalar, R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize, bound: i64) -> Mat<T> {
    Mat::from_fn(rows, cols, |_, _| T::from_int(rng.gen_range(-bound..=bound)))
}

pub fn random_tuple<T: Scalar, R: Rng + ?Sized>(rng: &mut R, d: usize, n: usize, bound: i64) -> MatTuple<T> {
    MatTuple::new((0..d).map(|_| random_mat(rng, n, n, bound)).collect()).expect("square entries")
}

/// Random invertible matrix together with its inverse.
pub fn random_invertible<T: Scalar, R: Rng + ?Sized>(rng: &mut R, n: usize, bound: i64) -> (Mat<T>, Mat<T>) {
    loop {
        let m: Mat<T> = random_mat(rng, n, n, bound.max(1));
        if let Ok(inv) = m.inverse() {
            return (m, inv);
        }
    }
}

/// Strictly block upper triangular matrix: an `m x m` grid of random `s x s`
/// blocks, zero on and below the block diagonal.
pub fn random_strict_upper<T: Scalar, R: Rng + ?Sized>(rng: &mut R, s: usize, m: usize, bound: i64) -> Mat<T> {
    let mut out = Mat::zeros(s * m, s * m);
    for i in 0..m {
        for j in i + 1..m {
            out.set_block(i * s, j * s, &random_mat(rng, s, s, bound));
        }
    }
    out
}

/// A jointly nilpotent perturbation of `I_m (x) Y`: every coordinate adds a
/// strictly block upper triangular matrix, so faux powers of length `>= m`
/// vanish.
pub fn nilpotent_point<T: Scalar, R: Rng + ?Sized>(rng: &mut R, centre: &MatTuple<T>, m: usize, bound: i64) -> MatTuple<T> {
    let s = centre.level();
    centre.kron_identity(m).map(|y| y + &random_strict_upper(rng, s, m, bound))
}

/// Shape parameters for random expressions.
#[derive(Clone, Copy, Debug)]
pub struct ExprShape {
    pub d: usize,
    pub max_depth: usize,
    pub const_bound: i64,
}

/// Random expression of depth at most `max_depth`. Internal nodes are sums,
/// products, negations and inversions; leaves are variables or small
/// integer constants.
pub fn random_expr<T: Scalar, R: Rng + ?Sized>(rng: &mut R, shape: ExprShape) -> NcExpr<T> {
    gen(rng, shape, shape.max_depth)
}

fn gen<T: Scalar, R: Rng + ?Sized>(rng: &mut R, shape: ExprShape, depth: usize) -> NcExpr<T> {
    if depth == 0 || rng.gen_bool(0.2) {
        return if rng.gen_bool(0.75) {
            NcExpr::var(rng.gen_range(1..=shape.d))
        } else {
            NcExpr::int(rng.gen_range(-shape.const_bound..=shape.const_bound))
        };
    }
    let ops = if depth >= 2 { 10 } else { 7 };
    match rng.gen_range(0..ops) {
        0..=2 => gen(rng, shape, depth - 1) + gen(rng, shape, depth - 1),
        3..=5 => gen(rng, shape, depth - 1) * gen(rng, shape, depth - 1),
        6 => -gen(rng, shape, depth - 1),
        _ => {
            // shift the argument by a constant so the inverse is usually regular
            let c = rng.gen_range(1..=shape.const_bound.max(1));
            (gen(rng, shape, depth - 2) + NcExpr::int(c)).inv()
        }
    }
}

/// An expression together with a centre in its domain and the minimal
/// realization compiled there.
pub struct CompiledSample<T> {
    pub expr: NcExpr<T>,
    pub centre: MatTuple<T>,
    pub realization: FMRealization<T>,
}

/// Draws expressions and centres until the expression is regular at the
/// centre; gives up after `attempts` draws.
pub fn random_compiled<T: Scalar, R: Rng + ?Sized>(
    rng: &mut R,
    shape: ExprShape,
    s: usize,
    bound: i64,
    attempts: usize,
) -> Result<Option<CompiledSample<T>>> {
    for _ in 0..attempts {
        let expr = random_expr(rng, shape);
        let centre = random_tuple(rng, shape.d, s, bound);
        match realize_expr(&expr, &centre) {
            Ok(realization) => return Ok(Some(CompiledSample { expr, centre, realization })),
            Err(Error::CentreSingular { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    Ok(None)
}
