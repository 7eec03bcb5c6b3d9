use crate::error::{Error, Result};
use crate::expr::NcExpr;
use crate::linalg::{BlockLinearMap, Mat};
use crate::point::MatTuple;
use crate::realization::FMRealization;
use crate::scalar::Scalar;

use super::minimize;

/// The constant `c`: `L = 0`, `D = c I_s`.
pub fn realize_const<T: Scalar>(c: &T, centre: &MatTuple<T>) -> FMRealization<T> {
    let (s, d) = (centre.level(), centre.d());
    FMRealization::new(
        centre.clone(),
        Mat::scalar(s, c),
        Mat::zeros(s, 0),
        vec![BlockLinearMap::zero(s, 0, 0); d],
        vec![BlockLinearMap::zero(s, 0, s); d],
    )
    .expect("constant realization shapes")
}

/// The coordinate function `X -> X_k` (1-based `k`): `L = s`, `D = Y_k`,
/// `C = I`, `A = 0`, `B_j(Z) = δ_jk Z`.
pub fn realize_var<T: Scalar>(k: usize, centre: &MatTuple<T>) -> Result<FMRealization<T>> {
    let (s, d) = (centre.level(), centre.d());
    if k == 0 || k > d {
        return Err(Error::Arity { expected: d, got: k });
    }
    let b = (1..=d)
        .map(|j| if j == k { BlockLinearMap::identity(s) } else { BlockLinearMap::zero(s, s, s) })
        .collect();
    FMRealization::new(
        centre.clone(),
        centre.get(k - 1).clone(),
        Mat::identity(s),
        vec![BlockLinearMap::zero(s, s, s); d],
        b,
    )
}

fn same_centre<T: Scalar>(r1: &FMRealization<T>, r2: &FMRealization<T>) -> Result<()> {
    if r1.centre() != r2.centre() {
        return Err(Error::Shape("realizations are centred at different points".into()));
    }
    Ok(())
}

/// Realization of `R_1 + R_2` on `K^{L_1} ⊕ K^{L_2}`.
pub fn realize_sum<T: Scalar>(r1: &FMRealization<T>, r2: &FMRealization<T>) -> Result<FMRealization<T>> {
    same_centre(r1, r2)?;
    let a = r1
        .a()
        .iter()
        .zip(r2.a())
        .map(|(a1, a2)| BlockLinearMap::combine(&[a1, a2], |m| Ok(Mat::block_diag(&[m[0], m[1]]))))
        .collect::<Result<Vec<_>>>()?;
    let b = r1
        .b()
        .iter()
        .zip(r2.b())
        .map(|(b1, b2)| BlockLinearMap::combine(&[b1, b2], |m| Mat::vstack(&[m[0], m[1]])))
        .collect::<Result<Vec<_>>>()?;
    FMRealization::new(
        r1.centre().clone(),
        r1.feedthrough().try_add(r2.feedthrough())?,
        Mat::hstack(&[r1.output(), r2.output()])?,
        a,
        b,
    )
}

/// Realization of `R_1 R_2`:
/// `A = [[A_1, B_1 C_2], [0, A_2]]`, `B = [B_1 D_2; B_2]`,
/// `C = [C_1, D_1 C_2]`, `D = D_1 D_2`.
pub fn realize_product<T: Scalar>(r1: &FMRealization<T>, r2: &FMRealization<T>) -> Result<FMRealization<T>> {
    same_centre(r1, r2)?;
    let (l1, l2) = (r1.state_dim(), r2.state_dim());
    let (c2, d2) = (r2.output(), r2.feedthrough());
    let a = (0..r1.d())
        .map(|k| {
            BlockLinearMap::combine(&[&r1.a()[k], &r1.b()[k], &r2.a()[k]], |m| {
                let mut out = Mat::zeros(l1 + l2, l1 + l2);
                out.set_block(0, 0, m[0]);
                out.set_block(0, l1, &m[1].try_mul(c2)?);
                out.set_block(l1, l1, m[2]);
                Ok(out)
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let b = (0..r1.d())
        .map(|k| BlockLinearMap::combine(&[&r1.b()[k], &r2.b()[k]], |m| Mat::vstack(&[&m[0].try_mul(d2)?, m[1]])))
        .collect::<Result<Vec<_>>>()?;
    FMRealization::new(
        r1.centre().clone(),
        r1.feedthrough().try_mul(d2)?,
        Mat::hstack(&[r1.output(), &r1.feedthrough().try_mul(c2)?])?,
        a,
        b,
    )
}

/// Realization of `R^{-1}`; needs `D` invertible, otherwise
/// [`Error::CentreSingular`] with an empty path.
pub fn realize_inverse<T: Scalar>(r: &FMRealization<T>) -> Result<FMRealization<T>> {
    let d_inv = r.feedthrough().inverse().map_err(|_| Error::CentreSingular { path: Vec::new() })?;
    let c = r.output();
    let dc = d_inv.try_mul(c)?;
    let a = r
        .a()
        .iter()
        .zip(r.b())
        .map(|(ak, bk)| BlockLinearMap::combine(&[ak, bk], |m| m[0].try_sub(&m[1].try_mul(&dc)?)))
        .collect::<Result<Vec<_>>>()?;
    let b = r.b().iter().map(|bk| bk.right_mul(&d_inv)).collect::<Result<Vec<_>>>()?;
    FMRealization::new(r.centre().clone(), d_inv, -&dc, a, b)
}

/// `-R`, as the product with the constant `-1`.
pub fn realize_neg<T: Scalar>(r: &FMRealization<T>) -> Result<FMRealization<T>> {
    realize_product(r, &realize_const(&T::one().neg_ref(), r.centre()))
}

/// Structural compilation without any minimization.
pub fn compile<T: Scalar>(e: &NcExpr<T>, centre: &MatTuple<T>) -> Result<FMRealization<T>> {
    build(e, centre, &mut Vec::new(), false)
}

/// Structural compilation followed by minimization. Intermediate results are
/// minimized at every composite node to keep state dimensions small.
///
/// Fails with [`Error::CentreSingular`] carrying the path of the first
/// inverse whose argument is singular at the centre.
pub fn realize_expr<T: Scalar>(e: &NcExpr<T>, centre: &MatTuple<T>) -> Result<FMRealization<T>> {
    Ok(minimize(&build(e, centre, &mut Vec::new(), true)?))
}

fn build<T: Scalar>(e: &NcExpr<T>, centre: &MatTuple<T>, path: &mut Vec<usize>, reduce: bool) -> Result<FMRealization<T>> {
    let child = |idx: usize, sub: &NcExpr<T>, path: &mut Vec<usize>| {
        path.push(idx);
        let r = build(sub, centre, path, reduce);
        path.pop();
        r
    };
    let r = match e {
        NcExpr::Const(c) => return Ok(realize_const(c, centre)),
        NcExpr::Var(k) => return realize_var(*k, centre),
        NcExpr::Sum(a, b) => realize_sum(&child(0, a, path)?, &child(1, b, path)?)?,
        NcExpr::Prod(a, b) => realize_product(&child(0, a, path)?, &child(1, b, path)?)?,
        NcExpr::Neg(a) => realize_neg(&child(0, a, path)?)?,
        NcExpr::Inv(a) => realize_inverse(&child(0, a, path)?).map_err(|err| match err {
            Error::CentreSingular { .. } => Error::CentreSingular { path: path.clone() },
            other => other,
        })?,
    };
    Ok(if reduce { minimize(&r) } else { r })
}
