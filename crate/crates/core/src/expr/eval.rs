use crate::error::{Error, Result};
use crate::expr::NcExpr;
use crate::linalg::Mat;
use crate::point::MatTuple;
use crate::scalar::Scalar;

/// Evaluates `e` at a matrix tuple; constants become scalar matrices.
///
/// Fails with [`Error::Domain`] naming the first inversion (in left-to-right
/// evaluation order) whose argument is singular.
pub fn eval_expr<T: Scalar>(e: &NcExpr<T>, x: &MatTuple<T>) -> Result<Mat<T>> {
    if e.arity() > x.d() {
        return Err(Error::Arity { expected: e.arity(), got: x.d() });
    }
    let mut path = Vec::new();
    eval_at(e, x, &mut path)
}

fn eval_at<T: Scalar>(e: &NcExpr<T>, x: &MatTuple<T>, path: &mut Vec<usize>) -> Result<Mat<T>> {
    let child = |i: usize, sub: &NcExpr<T>, path: &mut Vec<usize>| {
        path.push(i);
        let v = eval_at(sub, x, path);
        path.pop();
        v
    };
    Ok(match e {
        NcExpr::Const(c) => Mat::scalar(x.level(), c),
        NcExpr::Var(k) => x.get(k - 1).clone(),
        NcExpr::Sum(a, b) => {
            let va = child(0, a, path)?;
            &va + &child(1, b, path)?
        }
        NcExpr::Prod(a, b) => {
            let va = child(0, a, path)?;
            &va * &child(1, b, path)?
        }
        NcExpr::Neg(a) => -&child(0, a, path)?,
        NcExpr::Inv(a) => {
            let va = child(0, a, path)?;
            va.inverse().map_err(|_| Error::Domain { path: path.clone() })?
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;
    use crate::QMat;

    fn commutator_inverse() -> NcExpr<crate::Rat> {
        parse("(x1*x2 - x2*x1)^-1").unwrap()
    }

    #[test]
    fn empty_scalar_domain_of_commutator_inverse() {
        let x = MatTuple::new(vec![QMat::from_ints(&[[3]]), QMat::from_ints(&[[-5]])]).unwrap();
        assert_eq!(eval_expr(&commutator_inverse(), &x), Err(Error::Domain { path: vec![] }));
    }

    #[test]
    fn commutator_inverse_at_matrix_units() {
        let x = MatTuple::new(vec![QMat::from_ints(&[[0, 1], [0, 0]]), QMat::from_ints(&[[0, 0], [1, 0]])]).unwrap();
        assert_eq!(eval_expr(&commutator_inverse(), &x).unwrap(), QMat::from_ints(&[[1, 0], [0, -1]]));
    }

    #[test]
    fn variables_constants_and_paths() {
        let x = MatTuple::new(vec![QMat::from_ints(&[[1, 2], [3, 4]]), QMat::zeros(2, 2)]).unwrap();
        assert_eq!(eval_expr(&parse("x1").unwrap(), &x).unwrap(), *x.get(0));
        assert_eq!(eval_expr(&parse("7").unwrap(), &x).unwrap(), QMat::from_ints(&[[7, 0], [0, 7]]));
        let e = parse("x1 + (x1*x2)^-1").unwrap();
        assert_eq!(eval_expr(&e, &x), Err(Error::Domain { path: vec![1] }));
        assert_eq!(eval_expr(&parse("x3").unwrap(), &x), Err(Error::Arity { expected: 3, got: 2 }));
    }
}
