//! Exact elimination: determinants by fraction-free (Bareiss) elimination,
//! everything else through the reduced row echelon form. Pivots are always
//! the first nonzero entry in column order, so results are deterministic.

use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::scalar::Scalar;

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone)]
pub struct Rref<T> {
    pub matrix: Mat<T>,
    pub pivots: Vec<usize>,
}

impl<T: Scalar> Mat<T> {
    /// Determinant; the empty matrix has determinant one.
    pub fn det(&self) -> Result<T> {
        if !self.is_square() {
            return Err(Error::Shape(format!("det of a {:?} matrix", self.shape())));
        }
        let n = self.rows();
        if n == 0 {
            return Ok(T::one());
        }
        let mut a: Vec<Vec<T>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut sign_flip = false;
        let mut prev = T::one();
        for k in 0..n - 1 {
            let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
                return Ok(T::zero());
            };
            if p != k {
                a.swap(p, k);
                sign_flip = !sign_flip;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = a[i][j].mul_ref(&a[k][k]).sub_ref(&a[i][k].mul_ref(&a[k][j]));
                    a[i][j] = v.div_ref(&prev);
                }
                a[i][k] = T::zero();
            }
            prev = a[k][k].clone();
        }
        let d = a[n - 1][n - 1].clone();
        Ok(if sign_flip { d.neg_ref() } else { d })
    }

    pub fn rref(&self) -> Rref<T> {
        let mut m = self.clone();
        let (rows, cols) = m.shape();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..cols {
                    let tmp = m[(p, j)].clone();
                    m[(p, j)] = m[(r, j)].clone();
                    m[(r, j)] = tmp;
                }
            }
            let inv = m[(r, c)].recip_ref();
            for j in c..cols {
                m[(r, j)] = m[(r, j)].mul_ref(&inv);
            }
            for i in 0..rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone();
                for j in c..cols {
                    let v = m[(i, j)].sub_ref(&f.mul_ref(&m[(r, j)]));
                    m[(i, j)] = v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { matrix: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Basis of the null space, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vec<T>> {
        let Rref { matrix, pivots } = self.rref();
        let cols = self.cols();
        (0..cols)
            .filter(|c| !pivots.contains(c))
            .map(|free| {
                let mut v = vec![T::zero(); cols];
                v[free] = T::one();
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = matrix[(r, free)].neg_ref();
                }
                v
            })
            .collect()
    }

    /// The pivot columns of the matrix, a basis of its column space.
    pub fn image_basis(&self) -> Vec<Vec<T>> {
        self.rref().pivots.into_iter().map(|c| self.column(c)).collect()
    }

    /// Some `X` with `self * X = rhs`, or `None` when the system is inconsistent.
    pub fn solve(&self, rhs: &Mat<T>) -> Result<Option<Mat<T>>> {
        if self.rows() != rhs.rows() {
            return Err(Error::Shape(format!(
                "system {:?} with right-hand side {:?}",
                self.shape(),
                rhs.shape()
            )));
        }
        let n = self.cols();
        let aug = Mat::hstack(&[self, rhs])?;
        let Rref { matrix, pivots } = aug.rref();
        if pivots.iter().any(|&c| c >= n) {
            return Ok(None);
        }
        let mut x = Mat::zeros(n, rhs.cols());
        for (r, &pc) in pivots.iter().enumerate() {
            for j in 0..rhs.cols() {
                x[(pc, j)] = matrix[(r, n + j)].clone();
            }
        }
        Ok(Some(x))
    }

    /// Unique solution of a square system, `Singular` if the matrix is not invertible.
    pub fn solve_square(&self, rhs: &Mat<T>) -> Result<Mat<T>> {
        if !self.is_square() {
            return Err(Error::Shape(format!("square solve with a {:?} matrix", self.shape())));
        }
        let n = self.rows();
        let aug = Mat::hstack(&[self, rhs])?;
        let Rref { matrix, pivots } = aug.rref();
        // pivots ascend, so the left block is invertible iff the n-th pivot is column n-1
        if n > 0 && pivots.get(n - 1) != Some(&(n - 1)) {
            return Err(Error::Singular);
        }
        Ok(matrix.block(0, n, n, rhs.cols()))
    }

    pub fn inverse(&self) -> Result<Mat<T>> {
        self.solve_square(&Mat::identity(self.rows()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{QMat, Rat};

    #[test]
    fn det_of_identity_and_empty() {
        assert_eq!(QMat::identity(3).det().unwrap(), Rat::from_int(1));
        assert_eq!(QMat::zeros(0, 0).det().unwrap(), Rat::from_int(1));
        assert!(QMat::zeros(2, 3).det().is_err());
    }

    #[test]
    fn nilpotent_jordan_block() {
        let n = QMat::from_ints(&[[0, 1], [0, 0]]);
        assert_eq!(n.det().unwrap(), Rat::from_int(0));
        assert_eq!(n.rank(), 1);
        let k = n.kernel_basis();
        assert_eq!(k, vec![vec![Rat::from_int(1), Rat::from_int(0)]]);
        assert_eq!(n.inverse(), Err(Error::Singular));
    }

    #[test]
    fn det_with_row_swaps() {
        let a = QMat::from_ints(&[[0, 2, 1], [1, 0, 0], [3, 1, 4]]);
        // cofactor expansion along the first row: 0 - 2*(4-0) + 1*(1-0)
        assert_eq!(a.det().unwrap(), Rat::from_int(-7));
    }

    #[test]
    fn solve_inconsistent_and_underdetermined() {
        let a = QMat::from_ints(&[[1, 1], [2, 2]]);
        assert!(a.solve(&QMat::from_ints(&[[1], [3]])).unwrap().is_none());
        let x = a.solve(&QMat::from_ints(&[[1], [2]])).unwrap().unwrap();
        assert_eq!(&a * &x, QMat::from_ints(&[[1], [2]]));
        assert_eq!(a.image_basis().len(), 1);
    }
}
