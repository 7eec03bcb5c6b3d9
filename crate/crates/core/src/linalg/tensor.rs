//! Block matrices over the tensor algebra of `K^{s x s}` and their faux
//! product, in which block entries multiply by tensor concatenation.
//!
//! A tensor of order `l` is stored as a sparse weighted list of basis tuples
//! `(E_{k_1}, ..., E_{k_l})`, each `k_i = p * s + q` indexing a matrix unit.
//! Keys are kept sorted in a `BTreeMap` and zero weights are dropped, so two
//! tensors are equal exactly when their maps are equal.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct Tensor<T> {
    terms: BTreeMap<Vec<usize>, T>,
}

impl<T: Scalar> Tensor<T> {
    pub fn zero() -> Self {
        Tensor { terms: BTreeMap::new() }
    }

    /// The order-zero tensor `c`.
    pub fn scalar(c: T) -> Self {
        let mut t = Self::zero();
        t.add_term(Vec::new(), c);
        t
    }

    /// An `s x s` matrix as an order-one tensor.
    pub fn from_matrix(z: &Mat<T>) -> Self {
        let s = z.rows();
        let mut t = Self::zero();
        for p in 0..s {
            for q in 0..s {
                t.add_term(vec![p * s + q], z[(p, q)].clone());
            }
        }
        t
    }

    pub fn add_term(&mut self, key: Vec<usize>, w: T) {
        if w.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            Entry::Vacant(v) => {
                v.insert(w);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get().add_ref(&w);
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[usize], &T)> {
        self.terms.iter().map(|(k, w)| (k.as_slice(), w))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, w) in &other.terms {
            out.add_term(k.clone(), w.clone());
        }
        out
    }

    /// Tensor concatenation `self (x) other`.
    pub fn concat(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (k1, w1) in &self.terms {
            for (k2, w2) in &other.terms {
                let mut key = k1.clone();
                key.extend_from_slice(k2);
                out.add_term(key, w1.mul_ref(w2));
            }
        }
        out
    }
}

/// An `rows x cols` matrix with tensor entries.
#[derive(Clone, Debug, PartialEq)]
pub struct TensorMat<T> {
    rows: usize,
    cols: usize,
    s: usize,
    entries: Vec<Tensor<T>>,
}

impl<T: Scalar> TensorMat<T> {
    /// Views an `(s m) x (s n)` matrix as an `m x n` matrix of order-one tensors.
    pub fn from_blocked(x: &Mat<T>, s: usize) -> Result<Self> {
        if s == 0 || !x.rows().is_multiple_of(s) || !x.cols().is_multiple_of(s) {
            return Err(Error::Shape(format!("{:?} matrix is not a grid of {s}x{s} blocks", x.shape())));
        }
        let (rows, cols) = (x.rows() / s, x.cols() / s);
        let entries = (0..rows * cols)
            .map(|k| Tensor::from_matrix(&x.block((k / cols) * s, (k % cols) * s, s, s)))
            .collect();
        Ok(TensorMat { rows, cols, s, entries })
    }

    /// The faux identity: order-zero ones on the diagonal.
    pub fn identity(m: usize, s: usize) -> Self {
        let entries = (0..m * m)
            .map(|k| if k / m == k % m { Tensor::scalar(T::one()) } else { Tensor::zero() })
            .collect();
        TensorMat { rows: m, cols: m, s, entries }
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn entry(&self, i: usize, j: usize) -> &Tensor<T> {
        &self.entries[i * self.cols + j]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Tensor::is_zero)
    }

    /// Faux product: block `(i, j)` is `sum_k P_ik (x) Q_kj`.
    pub fn faux_product(&self, q: &Self) -> Result<Self> {
        if self.cols != q.rows || self.s != q.s {
            return Err(Error::Shape(format!(
                "faux product of {:?} and {:?} block matrices (block sizes {} and {})",
                self.shape(),
                q.shape(),
                self.s,
                q.s
            )));
        }
        let mut entries = Vec::with_capacity(self.rows * q.cols);
        for i in 0..self.rows {
            for j in 0..q.cols {
                let mut acc = Tensor::zero();
                for k in 0..self.cols {
                    let (a, b) = (self.entry(i, k), q.entry(k, j));
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc.add(&a.concat(b));
                    }
                }
                entries.push(acc);
            }
        }
        Ok(TensorMat { rows: self.rows, cols: q.cols, s: self.s, entries })
    }

    /// Applies a multilinear map entrywise. `f` receives a basis tuple and
    /// returns an `r x c` matrix; the result is the `(r rows) x (c cols)`
    /// block matrix of weighted sums.
    pub fn contract(&self, r: usize, c: usize, mut f: impl FnMut(&[usize]) -> Mat<T>) -> Mat<T> {
        let mut out = Mat::zeros(r * self.rows, c * self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let mut acc = Mat::zeros(r, c);
                for (key, w) in self.entry(i, j).terms() {
                    acc = &acc + &f(key).scale(w);
                }
                out.set_block(i * r, j * c, &acc);
            }
        }
        out
    }
}
