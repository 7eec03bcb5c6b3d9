//! Fornasini–Marchesini realizations centred at a matrix point.
//!
//! A realization centred at `Y = (Y_1, ..., Y_d)` (each `s x s`) is
//! described by a state dimension `L`, a feedthrough `D` (`s x s`), an output
//! map `C` (`s x L`) and linear maps `A_k: K^{s x s} -> K^{L x L}`,
//! `B_k: K^{s x s} -> K^{L x s}`. At a point `X` of level `s m` it takes the
//! value
//!
//! ```text
//! I_m (x) D + (I_m (x) C) Λ(X)^{-1} Σ_k (X_k - I_m (x) Y_k) B_k
//! Λ(X) = I_{Lm} - Σ_k (X_k - I_m (x) Y_k) A_k
//! ```
//!
//! where `(Z) T` applies `T` to every `s x s` block of `Z`.

mod algebra_eval;

pub use algebra_eval::{alg_matrix_from_grid, eval_algebra, grid_from_kron_layout, kron_layout, scalar_extract, AlgMatrix};

use crate::error::{Error, Result};
use crate::linalg::{kron_identity, BlockLinearMap, Mat};
use crate::point::MatTuple;
use crate::scalar::Scalar;

#[derive(Clone, PartialEq)]
pub struct FMRealization<T> {
    centre: MatTuple<T>,
    state_dim: usize,
    feedthrough: Mat<T>,
    output: Mat<T>,
    a: Vec<BlockLinearMap<T>>,
    b: Vec<BlockLinearMap<T>>,
}

impl<T: std::fmt::Display> std::fmt::Debug for FMRealization<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FMRealization")
            .field("L", &self.state_dim)
            .field("Y", &self.centre)
            .field("D", &self.feedthrough)
            .field("C", &self.output)
            .field("A", &self.a)
            .field("B", &self.b)
            .finish()
    }
}

impl<T: Scalar> FMRealization<T> {
    pub fn new(
        centre: MatTuple<T>,
        feedthrough: Mat<T>,
        output: Mat<T>,
        a: Vec<BlockLinearMap<T>>,
        b: Vec<BlockLinearMap<T>>,
    ) -> Result<Self> {
        let (s, d) = (centre.level(), centre.d());
        let l = output.cols();
        let shape_err = |what: &str| Err(Error::Shape(format!("realization {what}")));
        if s == 0 || d == 0 {
            return shape_err("needs a nonempty centre");
        }
        if feedthrough.shape() != (s, s) {
            return shape_err("feedthrough must be s x s");
        }
        if output.rows() != s {
            return shape_err("output map must have s rows");
        }
        if a.len() != d || b.len() != d {
            return shape_err("needs one A and one B map per variable");
        }
        if a.iter().any(|m| m.s_in() != s || m.out_shape() != (l, l)) {
            return shape_err("A maps must send s x s to L x L");
        }
        if b.iter().any(|m| m.s_in() != s || m.out_shape() != (l, s)) {
            return shape_err("B maps must send s x s to L x s");
        }
        Ok(FMRealization { centre, state_dim: l, feedthrough, output, a, b })
    }

    pub fn centre(&self) -> &MatTuple<T> {
        &self.centre
    }

    /// Number of variables.
    pub fn d(&self) -> usize {
        self.centre.d()
    }

    /// Block size of the centre.
    pub fn s(&self) -> usize {
        self.centre.level()
    }

    /// State dimension `L`.
    pub fn state_dim(&self) -> usize {
        self.state_dim
    }

    pub fn feedthrough(&self) -> &Mat<T> {
        &self.feedthrough
    }

    pub fn output(&self) -> &Mat<T> {
        &self.output
    }

    pub fn a(&self) -> &[BlockLinearMap<T>] {
        &self.a
    }

    pub fn b(&self) -> &[BlockLinearMap<T>] {
        &self.b
    }

    /// Block level `m` of a point, after checking arity and divisibility.
    pub fn block_level(&self, x: &MatTuple<T>) -> Result<usize> {
        if x.d() != self.d() {
            return Err(Error::Arity { expected: self.d(), got: x.d() });
        }
        let s = self.s();
        if x.level() == 0 || !x.level().is_multiple_of(s) {
            return Err(Error::LevelMismatch { level: x.level(), s });
        }
        Ok(x.level() / s)
    }

    /// `Σ_k (X_k - I_m (x) Y_k) A_k`.
    pub fn state_term(&self, x: &MatTuple<T>) -> Result<Mat<T>> {
        let m = self.block_level(x)?;
        let u = x.minus_centre(&self.centre)?;
        let mut p = Mat::zeros(self.state_dim * m, self.state_dim * m);
        for (ak, uk) in self.a.iter().zip(u.mats()) {
            p = &p + &ak.block_apply_level(uk, m)?;
        }
        Ok(p)
    }

    /// `Σ_k (X_k - I_m (x) Y_k) B_k`.
    pub fn input_term(&self, x: &MatTuple<T>) -> Result<Mat<T>> {
        let m = self.block_level(x)?;
        let u = x.minus_centre(&self.centre)?;
        let mut q = Mat::zeros(self.state_dim * m, self.s() * m);
        for (bk, uk) in self.b.iter().zip(u.mats()) {
            q = &q + &bk.block_apply_level(uk, m)?;
        }
        Ok(q)
    }

    /// The pencil `Λ(X)` at level `s m`.
    pub fn pencil(&self, x: &MatTuple<T>) -> Result<Mat<T>> {
        let p = self.state_term(x)?;
        Ok(&Mat::identity(p.rows()) - &p)
    }

    /// Whether the pencil is invertible at `X`.
    pub fn in_domain(&self, x: &MatTuple<T>) -> Result<bool> {
        Ok(!self.pencil(x)?.det()?.is_zero())
    }

    /// `Λ(X)^{-1}`.
    pub fn pencil_inverse(&self, x: &MatTuple<T>) -> Result<Mat<T>> {
        self.pencil(x)?.inverse().map_err(|_| Error::SingularPencil)
    }

    /// Value at a point of level `s m`.
    pub fn eval(&self, x: &MatTuple<T>) -> Result<Mat<T>> {
        let m = self.block_level(x)?;
        let state = self.pencil(x)?.solve_square(&self.input_term(x)?).map_err(|err| match err {
            Error::Singular => Error::SingularPencil,
            other => other,
        })?;
        let d = kron_identity(m, &self.feedthrough);
        Ok(&d + &(&kron_identity(m, &self.output) * &state))
    }

    /// Value at a point of any level `n`, through `I_s (x) X`.
    ///
    /// Returns the `n x n` value `f(X)` when `R(I_s (x) X) = I_s (x) f(X)`,
    /// and [`Error::ScalarStructureViolation`] when the value at the
    /// amplified point is not of that form.
    pub fn eval_at_level_n(&self, x: &MatTuple<T>) -> Result<Mat<T>> {
        let s = self.s();
        let n = x.level();
        let big = self.eval(&x.kron_identity(s))?;
        let f = big.block(0, 0, n, n);
        if big != kron_identity(s, &f) {
            return Err(Error::ScalarStructureViolation);
        }
        Ok(f)
    }

    /// Whether `I_s (x) X` lies in the domain.
    pub fn in_domain_at_level_n(&self, x: &MatTuple<T>) -> Result<bool> {
        self.in_domain(&x.kron_identity(self.s()))
    }

    /// State-space change of coordinates: `(T B_k, T A_k T^{-1}, C T^{-1})`.
    pub fn similar(&self, t: &Mat<T>, t_inv: &Mat<T>) -> Result<Self> {
        let a = self
            .a
            .iter()
            .map(|ak| ak.left_mul(t)?.right_mul(t_inv))
            .collect::<Result<Vec<_>>>()?;
        let b = self.b.iter().map(|bk| bk.left_mul(t)).collect::<Result<Vec<_>>>()?;
        FMRealization::new(self.centre.clone(), self.feedthrough.clone(), self.output.try_mul(t_inv)?, a, b)
    }
}
