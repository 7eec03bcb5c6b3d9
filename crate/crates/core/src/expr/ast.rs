use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::scalar::Scalar;

/// Syntax tree of a nc rational expression. Variables are 1-based (`x1`).
///
/// Node paths (used in domain diagnostics) list child indices from the
/// root: `0`/`1` for the left/right operand of a sum or product, `0` for the
/// argument of a negation or inverse.
#[derive(Clone, PartialEq)]
pub enum NcExpr<T> {
    Const(T),
    Var(usize),
    Sum(Box<NcExpr<T>>, Box<NcExpr<T>>),
    Prod(Box<NcExpr<T>>, Box<NcExpr<T>>),
    Inv(Box<NcExpr<T>>),
    Neg(Box<NcExpr<T>>),
}

impl<T: Scalar> NcExpr<T> {
    pub fn var(k: usize) -> Self {
        assert!(k >= 1, "variables are numbered from 1");
        NcExpr::Var(k)
    }

    pub fn constant(c: T) -> Self {
        NcExpr::Const(c)
    }

    pub fn int(c: i64) -> Self {
        NcExpr::Const(T::from_int(c))
    }

    pub fn inv(self) -> Self {
        NcExpr::Inv(Box::new(self))
    }

    /// Largest variable index occurring in the expression.
    pub fn arity(&self) -> usize {
        match self {
            NcExpr::Const(_) => 0,
            NcExpr::Var(k) => *k,
            NcExpr::Sum(a, b) | NcExpr::Prod(a, b) => a.arity().max(b.arity()),
            NcExpr::Inv(a) | NcExpr::Neg(a) => a.arity(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            NcExpr::Const(_) | NcExpr::Var(_) => 0,
            NcExpr::Sum(a, b) | NcExpr::Prod(a, b) => 1 + a.depth().max(b.depth()),
            NcExpr::Inv(a) | NcExpr::Neg(a) => 1 + a.depth(),
        }
    }

    pub fn inversion_count(&self) -> usize {
        match self {
            NcExpr::Const(_) | NcExpr::Var(_) => 0,
            NcExpr::Sum(a, b) | NcExpr::Prod(a, b) => a.inversion_count() + b.inversion_count(),
            NcExpr::Inv(a) => 1 + a.inversion_count(),
            NcExpr::Neg(a) => a.inversion_count(),
        }
    }

    /// Converts constants to another scalar type.
    pub fn map_consts<U: Scalar>(&self, f: &impl Fn(&T) -> U) -> NcExpr<U> {
        match self {
            NcExpr::Const(c) => NcExpr::Const(f(c)),
            NcExpr::Var(k) => NcExpr::Var(*k),
            NcExpr::Sum(a, b) => NcExpr::Sum(Box::new(a.map_consts(f)), Box::new(b.map_consts(f))),
            NcExpr::Prod(a, b) => NcExpr::Prod(Box::new(a.map_consts(f)), Box::new(b.map_consts(f))),
            NcExpr::Inv(a) => NcExpr::Inv(Box::new(a.map_consts(f))),
            NcExpr::Neg(a) => NcExpr::Neg(Box::new(a.map_consts(f))),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            NcExpr::Sum(..) => 1,
            NcExpr::Prod(..) => 2,
            NcExpr::Neg(_) => 3,
            NcExpr::Const(c) if c.to_string().starts_with('-') => 3,
            _ => 4,
        }
    }

    fn write_at(&self, f: &mut String, ctx: u8) {
        let wrap = self.precedence() < ctx;
        if wrap {
            f.push('(');
        }
        match self {
            NcExpr::Const(c) => f.push_str(&c.to_string()),
            NcExpr::Var(k) => f.push_str(&format!("x{k}")),
            NcExpr::Sum(a, b) => {
                a.write_at(f, 1);
                match b.as_ref() {
                    NcExpr::Neg(c) => {
                        f.push_str(" - ");
                        c.write_at(f, 2);
                    }
                    _ => {
                        f.push_str(" + ");
                        b.write_at(f, 2);
                    }
                }
            }
            NcExpr::Prod(a, b) => {
                a.write_at(f, 2);
                f.push('*');
                b.write_at(f, 3);
            }
            NcExpr::Neg(a) => {
                f.push('-');
                let mut inner = String::new();
                a.write_at(&mut inner, 3);
                // "-3" would read back as a negative literal
                if inner.starts_with(|c: char| c.is_ascii_digit() || c == '-') {
                    f.push('(');
                    f.push_str(&inner);
                    f.push(')');
                } else {
                    f.push_str(&inner);
                }
            }
            NcExpr::Inv(a) => {
                a.write_at(f, 4);
                f.push_str("^-1");
            }
        }
        if wrap {
            f.push(')');
        }
    }
}

impl<T: Scalar> fmt::Display for NcExpr<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        self.write_at(&mut s, 0);
        f.write_str(&s)
    }
}

impl<T: Scalar> fmt::Debug for NcExpr<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NcExpr::Const(c) => write!(f, "Const({c})"),
            NcExpr::Var(k) => write!(f, "Var({k})"),
            NcExpr::Sum(a, b) => write!(f, "Sum({a:?}, {b:?})"),
            NcExpr::Prod(a, b) => write!(f, "Prod({a:?}, {b:?})"),
            NcExpr::Inv(a) => write!(f, "Inv({a:?})"),
            NcExpr::Neg(a) => write!(f, "Neg({a:?})"),
        }
    }
}

impl<T: Scalar> Add for NcExpr<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        NcExpr::Sum(Box::new(self), Box::new(rhs))
    }
}

impl<T: Scalar> Sub for NcExpr<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        NcExpr::Sum(Box::new(self), Box::new(-rhs))
    }
}

impl<T: Scalar> Mul for NcExpr<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        NcExpr::Prod(Box::new(self), Box::new(rhs))
    }
}

impl<T: Scalar> Neg for NcExpr<T> {
    type Output = Self;
    fn neg(self) -> Self {
        NcExpr::Neg(Box::new(self))
    }
}
