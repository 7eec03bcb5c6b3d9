use crate::error::{Error, Result};
use crate::linalg::{kron_identity, Mat};
use crate::scalar::Scalar;

/// A `d`-tuple of `n x n` matrices: an evaluation point at level `n`.
#[derive(Clone, PartialEq)]
pub struct MatTuple<T> {
    level: usize,
    mats: Vec<Mat<T>>,
}

impl<T: std::fmt::Display> std::fmt::Debug for MatTuple<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries(&self.mats).finish()
    }
}

impl<T: Scalar> MatTuple<T> {
    pub fn new(mats: Vec<Mat<T>>) -> Result<Self> {
        let level = mats.first().map_or(0, Mat::rows);
        if mats.iter().any(|m| m.shape() != (level, level)) {
            return Err(Error::Shape("tuple entries must be square of a common size".into()));
        }
        Ok(MatTuple { level, mats })
    }

    /// The zero point at level `n`.
    pub fn zeros(d: usize, n: usize) -> Self {
        MatTuple { level: n, mats: vec![Mat::zeros(n, n); d] }
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn d(&self) -> usize {
        self.mats.len()
    }

    pub fn mats(&self) -> &[Mat<T>] {
        &self.mats
    }

    pub fn into_mats(self) -> Vec<Mat<T>> {
        self.mats
    }

    /// Zero-based access.
    pub fn get(&self, k: usize) -> &Mat<T> {
        &self.mats[k]
    }

    pub fn map(&self, f: impl FnMut(&Mat<T>) -> Mat<T>) -> Self {
        MatTuple::new(self.mats.iter().map(f).collect()).expect("map preserves squareness")
    }

    pub fn zip_map(&self, other: &Self, mut f: impl FnMut(&Mat<T>, &Mat<T>) -> Mat<T>) -> Result<Self> {
        if self.d() != other.d() {
            return Err(Error::Arity { expected: self.d(), got: other.d() });
        }
        MatTuple::new(self.mats.iter().zip(&other.mats).map(|(a, b)| f(a, b)).collect())
    }

    /// `I_m (x) X`.
    pub fn kron_identity(&self, m: usize) -> Self {
        self.map(|x| kron_identity(m, x))
    }

    /// `X (+) X'`.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        self.zip_map(other, Mat::direct_sum)
    }

    /// The block upper triangular point `[[X, Z], [0, X']]`.
    pub fn upper_triangular(&self, corner: &[Mat<T>], other: &Self) -> Result<Self> {
        if corner.len() != self.d() || other.d() != self.d() {
            return Err(Error::Arity { expected: self.d(), got: corner.len().min(other.d()) });
        }
        let (n1, n2) = (self.level, other.level);
        let mats = (0..self.d())
            .map(|k| {
                if corner[k].shape() != (n1, n2) {
                    return Err(Error::Shape("corner block has the wrong shape".into()));
                }
                let mut m = self.mats[k].direct_sum(&other.mats[k]);
                m.set_block(0, n1, &corner[k]);
                Ok(m)
            })
            .collect::<Result<Vec<_>>>()?;
        MatTuple::new(mats)
    }

    /// `S X S^{-1}` given both `S` and its inverse.
    pub fn conjugate(&self, s: &Mat<T>, s_inv: &Mat<T>) -> Self {
        self.map(|x| &(s * x) * s_inv)
    }

    /// `X - I_m (x) Y` for a centre `Y` of block size `s`, with `m = level / s`.
    pub fn minus_centre(&self, centre: &Self) -> Result<Self> {
        let s = centre.level;
        if s == 0 || !self.level.is_multiple_of(s) {
            return Err(Error::LevelMismatch { level: self.level, s });
        }
        let m = self.level / s;
        self.zip_map(&centre.kron_identity(m), |a, b| a - b)
    }
}
