use std::fmt::Debug;
use std::marker::PhantomData;

use crate::error::{Error, Result};
use crate::expr::NcExpr;
use crate::linalg::Mat;
use crate::scalar::Scalar;

/// A unital algebra over the scalar field `T`.
///
/// Ring axioms are assumed, not checked. `try_invert` must return a
/// two-sided inverse exactly when one exists.
pub trait Algebra<T: Scalar> {
    type Elem: Clone + PartialEq + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn scale(&self, c: &T, a: &Self::Elem) -> Self::Elem;
    fn try_invert(&self, a: &Self::Elem) -> Option<Self::Elem>;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    /// `c * 1`.
    fn embed(&self, c: &T) -> Self::Elem {
        self.scale(c, &self.one())
    }
}

/// The algebra of `n x n` matrices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MatrixAlgebra<T> {
    n: usize,
    _scalar: PhantomData<T>,
}

impl<T> MatrixAlgebra<T> {
    pub fn new(n: usize) -> Self {
        MatrixAlgebra { n, _scalar: PhantomData }
    }

    pub fn n(&self) -> usize {
        self.n
    }
}

impl<T: Scalar> Algebra<T> for MatrixAlgebra<T> {
    type Elem = Mat<T>;

    fn zero(&self) -> Mat<T> {
        Mat::zeros(self.n, self.n)
    }
    fn one(&self) -> Mat<T> {
        Mat::identity(self.n)
    }
    fn add(&self, a: &Mat<T>, b: &Mat<T>) -> Mat<T> {
        a + b
    }
    fn neg(&self, a: &Mat<T>) -> Mat<T> {
        -a
    }
    fn mul(&self, a: &Mat<T>, b: &Mat<T>) -> Mat<T> {
        a * b
    }
    fn scale(&self, c: &T, a: &Mat<T>) -> Mat<T> {
        a.scale(c)
    }
    fn try_invert(&self, a: &Mat<T>) -> Option<Mat<T>> {
        a.inverse().ok()
    }
    fn is_zero(&self, a: &Mat<T>) -> bool {
        a.is_zero()
    }
}

/// Evaluates `e` at `d` elements of an algebra.
pub fn eval_expr_algebra<T: Scalar, A: Algebra<T>>(e: &NcExpr<T>, a: &[A::Elem], alg: &A) -> Result<A::Elem> {
    if e.arity() > a.len() {
        return Err(Error::Arity { expected: e.arity(), got: a.len() });
    }
    let mut path = Vec::new();
    eval_at(e, a, alg, &mut path)
}

fn eval_at<T: Scalar, A: Algebra<T>>(e: &NcExpr<T>, a: &[A::Elem], alg: &A, path: &mut Vec<usize>) -> Result<A::Elem> {
    let child = |i: usize, sub: &NcExpr<T>, path: &mut Vec<usize>| {
        path.push(i);
        let v = eval_at(sub, a, alg, path);
        path.pop();
        v
    };
    Ok(match e {
        NcExpr::Const(c) => alg.embed(c),
        NcExpr::Var(k) => a[k - 1].clone(),
        NcExpr::Sum(l, r) => {
            let vl = child(0, l, path)?;
            alg.add(&vl, &child(1, r, path)?)
        }
        NcExpr::Prod(l, r) => {
            let vl = child(0, l, path)?;
            alg.mul(&vl, &child(1, r, path)?)
        }
        NcExpr::Neg(l) => alg.neg(&child(0, l, path)?),
        NcExpr::Inv(l) => {
            let v = child(0, l, path)?;
            alg.try_invert(&v).ok_or_else(|| Error::Domain { path: path.clone() })?
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;
    use crate::{QMat, Rat};

    #[test]
    fn constants_embed_as_multiples_of_one() {
        let alg = MatrixAlgebra::<Rat>::new(3);
        let e = parse("5/3").unwrap();
        let v = eval_expr_algebra(&e, &[], &alg).unwrap();
        assert_eq!(v, QMat::scalar(3, &Rat::new(5.into(), 3.into())));
    }

    #[test]
    fn non_invertible_argument() {
        let alg = MatrixAlgebra::<Rat>::new(2);
        let e = parse("x1^-1").unwrap();
        let a = [QMat::from_ints(&[[1, 1], [1, 1]])];
        assert_eq!(eval_expr_algebra(&e, &a, &alg), Err(Error::Domain { path: vec![] }));
    }

    #[test]
    fn ring_axioms_spot_check() {
        let alg = MatrixAlgebra::<Rat>::new(2);
        let a = QMat::from_ints(&[[1, 2], [0, 1]]);
        let b = QMat::from_ints(&[[0, 1], [1, 1]]);
        let c = QMat::from_ints(&[[2, 0], [3, -1]]);
        assert_eq!(alg.mul(&a, &alg.add(&b, &c)), alg.add(&alg.mul(&a, &b), &alg.mul(&a, &c)));
        assert_eq!(alg.mul(&alg.one(), &a), a);
        assert!(alg.is_zero(&alg.sub(&a, &a)));
        let inv = alg.try_invert(&a).unwrap();
        assert_eq!(alg.mul(&inv, &a), alg.one());
    }
}
