use crate::error::{Error, Result};
use crate::expr::Algebra;
use crate::linalg::{perm_matrix, Mat};
use crate::scalar::Scalar;

use super::FMRealization;

/// A rectangular matrix with entries in an algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgMatrix<E> {
    rows: usize,
    cols: usize,
    entries: Vec<E>,
}

impl<E: Clone> AlgMatrix<E> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> E) -> Self {
        let entries = (0..rows * cols).map(|k| f(k / cols.max(1), k % cols.max(1))).collect();
        AlgMatrix { rows, cols, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.entries[i * self.cols + j]
    }

    fn get_mut(&mut self, i: usize, j: usize) -> &mut E {
        &mut self.entries[i * self.cols + j]
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i != j {
            for c in 0..self.cols {
                self.entries.swap(i * self.cols + c, j * self.cols + c);
            }
        }
    }
}

/// Value of a realization on an `s x s` matrix over an algebra, one entry
/// per variable: `I_s (x) D + (I_s (x) C) Λ^{-1} Σ_k (a_k - Y_k (x) 1) B_k`
/// with every map extended by `T(Σ E_ij (x) a_ij) = Σ T(E_ij) (x) a_ij`.
///
/// The pencil is inverted by Gauss–Jordan elimination with left
/// multiplication; a column with no invertible candidate pivot gives
/// [`Error::AlgebraSingular`]. Over a division algebra this is exact; over
/// other algebras it may reject points at which the pencil is invertible.
pub fn eval_algebra<T: Scalar, A: Algebra<T>>(
    r: &FMRealization<T>,
    a: &[AlgMatrix<A::Elem>],
    alg: &A,
) -> Result<AlgMatrix<A::Elem>> {
    let (s, l) = (r.s(), r.state_dim());
    if a.len() != r.d() {
        return Err(Error::Arity { expected: r.d(), got: a.len() });
    }
    if a.iter().any(|ak| ak.rows != s || ak.cols != s) {
        return Err(Error::Shape(format!("algebra point must be {s} x {s}")));
    }
    let u: Vec<AlgMatrix<A::Elem>> = a
        .iter()
        .zip(r.centre().mats())
        .map(|(ak, yk)| AlgMatrix::from_fn(s, s, |i, j| alg.sub(ak.get(i, j), &alg.embed(&yk[(i, j)]))))
        .collect();
    // Σ_k Σ_ij T_k(E_ij) (x) u_k[i, j]
    let extend = |maps: &[crate::linalg::BlockLinearMap<T>], rows: usize, cols: usize| {
        let mut out = AlgMatrix::from_fn(rows, cols, |_, _| alg.zero());
        for (map, uk) in maps.iter().zip(&u) {
            for i in 0..s {
                for j in 0..s {
                    let e = uk.get(i, j);
                    if alg.is_zero(e) {
                        continue;
                    }
                    let img = map.image(i, j);
                    for p in 0..rows {
                        for q in 0..cols {
                            let c = &img[(p, q)];
                            if !c.is_zero() {
                                let term = alg.scale(c, e);
                                let slot = out.get_mut(p, q);
                                *slot = alg.add(slot, &term);
                            }
                        }
                    }
                }
            }
        }
        out
    };
    let mut pencil = extend(r.a(), l, l);
    for p in 0..l {
        for q in 0..l {
            let slot = pencil.get_mut(p, q);
            *slot = if p == q { alg.sub(&alg.one(), slot) } else { alg.neg(slot) };
        }
    }
    let mut rhs = extend(r.b(), l, s);

    for col in 0..l {
        let (piv, inv) = (col..l)
            .find_map(|row| alg.try_invert(pencil.get(row, col)).map(|inv| (row, inv)))
            .ok_or(Error::AlgebraSingular)?;
        pencil.swap_rows(piv, col);
        rhs.swap_rows(piv, col);
        for q in 0..l {
            let v = alg.mul(&inv, pencil.get(col, q));
            *pencil.get_mut(col, q) = v;
        }
        for q in 0..s {
            let v = alg.mul(&inv, rhs.get(col, q));
            *rhs.get_mut(col, q) = v;
        }
        for row in (0..l).filter(|&row| row != col) {
            let f = pencil.get(row, col).clone();
            if alg.is_zero(&f) {
                continue;
            }
            for q in 0..l {
                let v = alg.sub(pencil.get(row, q), &alg.mul(&f, pencil.get(col, q)));
                *pencil.get_mut(row, q) = v;
            }
            for q in 0..s {
                let v = alg.sub(rhs.get(row, q), &alg.mul(&f, rhs.get(col, q)));
                *rhs.get_mut(row, q) = v;
            }
        }
    }

    let (d, c) = (r.feedthrough(), r.output());
    Ok(AlgMatrix::from_fn(s, s, |i, j| {
        let mut acc = alg.embed(&d[(i, j)]);
        for p in 0..l {
            if !c[(i, p)].is_zero() {
                acc = alg.add(&acc, &alg.scale(&c[(i, p)], rhs.get(p, j)));
            }
        }
        acc
    }))
}

/// The common diagonal entry of a scalar matrix `I (x) a`, if it is one.
pub fn scalar_extract<T: Scalar, A: Algebra<T>>(m: &AlgMatrix<A::Elem>, alg: &A) -> Option<A::Elem> {
    if m.rows != m.cols || m.rows == 0 {
        return None;
    }
    let a = m.get(0, 0);
    for i in 0..m.rows {
        for j in 0..m.cols {
            let e = m.get(i, j);
            if (i == j && e != a) || (i != j && !alg.is_zero(e)) {
                return None;
            }
        }
    }
    Some(a.clone())
}

/// `Σ E_ij (x) a_ij` for a matrix over `n x n` matrices.
pub fn kron_layout<T: Scalar>(a: &AlgMatrix<Mat<T>>, n: usize) -> Mat<T> {
    let mut out = Mat::zeros(a.rows * n, a.cols * n);
    for i in 0..a.rows {
        for j in 0..a.cols {
            out.set_block(i * n, j * n, a.get(i, j));
        }
    }
    out
}

/// Reorders `Σ E_ij (x) a_ij` (with `E_ij` of size `s`, `a_ij` of size `n`)
/// into `Σ a_ij (x) E_ij`, the layout used for points of level `s n`.
pub fn grid_from_kron_layout<T: Scalar>(flat: &Mat<T>, s: usize, n: usize) -> Mat<T> {
    let p: Mat<T> = perm_matrix(n, s);
    &(&p * flat) * &p.transpose()
}

/// Inverse of [`grid_from_kron_layout`] followed by splitting into entries.
pub fn alg_matrix_from_grid<T: Scalar>(x: &Mat<T>, s: usize, n: usize) -> AlgMatrix<Mat<T>> {
    AlgMatrix::from_fn(s, s, |i, j| Mat::from_fn(n, n, |a, b| x[(a * s + i, b * s + j)].clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::MatrixAlgebra;
    use crate::linalg::{kron, BlockLinearMap};
    use crate::point::MatTuple;
    use crate::sample::{random_mat, random_tuple};
    use crate::{QMat, Rat};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn sample_realization(rng: &mut ChaCha8Rng, d: usize, s: usize, l: usize) -> FMRealization<Rat> {
        let y = random_tuple(rng, d, s, 2);
        let a = (0..d)
            .map(|_| BlockLinearMap::new(s, l, l, (0..s * s).map(|_| random_mat(rng, l, l, 1)).collect()).unwrap())
            .collect();
        let b = (0..d)
            .map(|_| BlockLinearMap::new(s, l, s, (0..s * s).map(|_| random_mat(rng, l, s, 2)).collect()).unwrap())
            .collect();
        FMRealization::new(y, random_mat(rng, s, s, 3), random_mat(rng, s, l, 2), a, b).unwrap()
    }

    #[test]
    fn shuffle_matches_index_formula() {
        let (s, n) = (2, 3);
        let flat = QMat::from_fn(s * n, s * n, |r, c| Rat::from_int((r * 10 + c) as i64));
        let g = grid_from_kron_layout(&flat, s, n);
        for i in 0..s {
            for j in 0..s {
                for a in 0..n {
                    for b in 0..n {
                        assert_eq!(g[(a * s + i, b * s + j)], flat[(i * n + a, j * n + b)]);
                    }
                }
            }
        }
        let m = QMat::from_ints(&[[1, 2, 0], [0, 3, 4], [5, 0, 6]]);
        let e = QMat::unit(2, 2, 0, 1);
        assert_eq!(grid_from_kron_layout(&kron(&e, &m), s, n), kron(&m, &e));
    }

    #[test]
    fn matrix_algebra_agrees_with_level_evaluation() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut compared = 0;
        for trial in 0..20 {
            let (d, s, l, n) = (2, 1 + trial % 2, 1 + trial % 3, 1 + trial % 2);
            let r = sample_realization(&mut rng, d, s, l);
            let x = random_tuple::<Rat, _>(&mut rng, d, s * n, 2);
            if !r.in_domain(&x).unwrap() {
                continue;
            }
            let alg = MatrixAlgebra::new(n);
            let pts: Vec<_> = x.mats().iter().map(|xk| alg_matrix_from_grid(xk, s, n)).collect();
            match eval_algebra(&r, &pts, &alg) {
                Ok(v) => {
                    let flat = kron_layout(&v, n);
                    assert_eq!(grid_from_kron_layout(&flat, s, n), r.eval(&x).unwrap());
                    compared += 1;
                }
                Err(Error::AlgebraSingular) => {}
                Err(e) => panic!("{e}"),
            }
        }
        assert!(compared >= 10, "only {compared} comparisons");
    }

    #[test]
    fn scalar_extract_finds_diagonal() {
        let alg = MatrixAlgebra::<Rat>::new(2);
        let a = QMat::from_ints(&[[1, 2], [3, 4]]);
        let diag = AlgMatrix::from_fn(3, 3, |i, j| if i == j { a.clone() } else { QMat::zeros(2, 2) });
        assert_eq!(scalar_extract(&diag, &alg), Some(a.clone()));
        let mut off = diag.clone();
        *off.get_mut(0, 1) = QMat::identity(2);
        assert_eq!(scalar_extract(&off, &alg), None);
    }

    #[test]
    fn scalar_point_over_algebra() {
        // at I_s (x) X the value should be I_s (x) f(X) for an LLA realization;
        // the coordinate realization is one
        let s = 2;
        let y = MatTuple::new(vec![QMat::from_ints(&[[0, 1], [0, 0]])]).unwrap();
        let r = FMRealization::new(
            y.clone(),
            y.get(0).clone(),
            QMat::identity(s),
            vec![BlockLinearMap::zero(s, s, s)],
            vec![BlockLinearMap::identity(s)],
        )
        .unwrap();
        let alg = MatrixAlgebra::<Rat>::new(2);
        let xa = QMat::from_ints(&[[1, 1], [0, 2]]);
        let pt = AlgMatrix::from_fn(s, s, |i, j| if i == j { xa.clone() } else { QMat::zeros(2, 2) });
        let v = eval_algebra(&r, &[pt], &alg).unwrap();
        assert_eq!(scalar_extract(&v, &alg), Some(xa));
    }
}
