use crate::linalg::Mat;
use crate::scalar::Scalar;

/// A subspace of `K^n` held as a reduced row echelon basis.
#[derive(Clone, Debug, PartialEq)]
pub struct Subspace<T> {
    ambient: usize,
    // sorted by pivot; each row is 1 at its pivot and 0 at every other pivot
    rows: Vec<Vec<T>>,
    pivots: Vec<usize>,
}

impl<T: Scalar> Subspace<T> {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        let mut sp = Self::zero(ambient);
        for i in 0..ambient {
            sp.insert((0..ambient).map(|j| if i == j { T::one() } else { T::zero() }).collect());
        }
        sp
    }

    pub fn from_vectors(ambient: usize, vs: impl IntoIterator<Item = Vec<T>>) -> Self {
        let mut sp = Self::zero(ambient);
        for v in vs {
            sp.insert(v);
        }
        sp
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    pub fn basis(&self) -> &[Vec<T>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn reduce(&self, mut v: Vec<T>) -> Vec<T> {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let f = v[p].clone();
                for (x, r) in v.iter_mut().zip(row) {
                    if !r.is_zero() {
                        *x = x.sub_ref(&f.mul_ref(r));
                    }
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[T]) -> bool {
        assert_eq!(v.len(), self.ambient, "vector length");
        self.reduce(v.to_vec()).iter().all(|x| x.is_zero())
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, v: Vec<T>) -> bool {
        assert_eq!(v.len(), self.ambient, "vector length");
        let mut v = self.reduce(v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].recip_ref();
        for x in v.iter_mut() {
            *x = x.mul_ref(&inv);
        }
        for row in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let f = row[p].clone();
                for (x, r) in row.iter_mut().zip(&v) {
                    if !r.is_zero() {
                        *x = x.sub_ref(&f.mul_ref(r));
                    }
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, v);
        true
    }

    /// Basis vectors as the columns of an `ambient x dim` matrix.
    pub fn basis_columns(&self) -> Mat<T> {
        Mat::from_columns(self.ambient, &self.rows)
    }

    /// Basis vectors as the rows of a `dim x ambient` matrix.
    pub fn basis_rows(&self) -> Mat<T> {
        Mat::from_fn(self.dim(), self.ambient, |i, j| self.rows[i][j].clone())
    }

    /// `dim x ambient` selection of the pivot coordinates; a left inverse of
    /// [`Self::basis_columns`] that recovers coordinates of any vector in the
    /// subspace.
    pub fn pivot_selector(&self) -> Mat<T> {
        Mat::from_fn(self.dim(), self.ambient, |i, j| if self.pivots[i] == j { T::one() } else { T::zero() })
    }

    /// Smallest subspace containing `generators` and invariant under every
    /// matrix in `ops`.
    pub fn closure(ambient: usize, generators: impl IntoIterator<Item = Vec<T>>, ops: &[Mat<T>]) -> Self {
        let mut sp = Self::zero(ambient);
        let mut queue = std::collections::VecDeque::new();
        for g in generators {
            if sp.insert(g.clone()) {
                queue.push_back(g);
            }
        }
        while let Some(v) = queue.pop_front() {
            if sp.is_full() {
                break;
            }
            let col = Mat::column_vector(v);
            for op in ops {
                let w = (op * &col).column(0);
                if sp.insert(w.clone()) {
                    queue.push_back(w);
                }
            }
        }
        sp
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{QMat, Rat};

    fn v(xs: &[i64]) -> Vec<Rat> {
        xs.iter().map(|&x| Rat::from_int(x)).collect()
    }

    #[test]
    fn echelon_insert_and_contains() {
        let mut sp = Subspace::zero(3);
        assert!(sp.insert(v(&[0, 2, 4])));
        assert!(sp.insert(v(&[1, 1, 1])));
        assert!(!sp.insert(v(&[2, 4, 6])));
        assert_eq!(sp.dim(), 2);
        assert_eq!(sp.pivots(), &[0, 1]);
        assert!(sp.contains(&v(&[1, 3, 5])));
        assert!(!sp.contains(&v(&[0, 0, 1])));
        assert_eq!(&sp.pivot_selector() * &sp.basis_columns(), QMat::identity(2));
    }

    #[test]
    fn closure_under_shift() {
        let shift = QMat::from_ints(&[[0, 0, 0], [1, 0, 0], [0, 1, 0]]);
        let sp = Subspace::closure(3, [v(&[1, 0, 0])], std::slice::from_ref(&shift));
        assert!(sp.is_full());
        let sp = Subspace::closure(3, [v(&[0, 1, 0])], &[shift]);
        assert_eq!(sp.dim(), 2);
        assert!(!sp.contains(&v(&[1, 0, 0])));
    }
}
