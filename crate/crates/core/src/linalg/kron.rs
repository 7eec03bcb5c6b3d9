use crate::linalg::Mat;
use crate::scalar::Scalar;

/// Kronecker product: the block matrix `[p_ij * Q]`.
pub fn kron<T: Scalar>(p: &Mat<T>, q: &Mat<T>) -> Mat<T> {
    let (n3, n4) = q.shape();
    Mat::from_fn(p.rows() * n3, p.cols() * n4, |r, c| {
        p[(r / n3, c / n4)].mul_ref(&q[(r % n3, c % n4)])
    })
}

/// `I_m (x) A`: `m` copies of `A` down the diagonal.
pub fn kron_identity<T: Scalar>(m: usize, a: &Mat<T>) -> Mat<T> {
    let parts: Vec<&Mat<T>> = std::iter::repeat_n(a, m).collect();
    Mat::block_diag(&parts)
}

/// The commutation matrix `E(n1, n2) = [E_ij^T]`, `E_ij` ranging over the
/// `n1 x n2` matrix units. It swaps Kronecker factors:
/// `P (x) Q = E(n3, n1) (Q (x) P) E(n4, n2)^T` for `Q: n1 x n2`, `P: n3 x n4`.
pub fn perm_matrix<T: Scalar>(n1: usize, n2: usize) -> Mat<T> {
    let mut e = Mat::zeros(n1 * n2, n1 * n2);
    for i in 0..n1 {
        for j in 0..n2 {
            e[(i * n2 + j, j * n1 + i)] = T::one();
        }
    }
    e
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{QMat, Rat};

    #[test]
    fn kron_with_scalar_one_is_identity_map() {
        let q = QMat::from_ints(&[[1, 2, 3], [4, 5, 6]]);
        assert_eq!(kron(&QMat::identity(1), &q), q);
    }

    #[test]
    fn kron_nilpotent_by_scalar() {
        let p = QMat::from_ints(&[[0, 1], [0, 0]]);
        assert_eq!(kron(&p, &QMat::from_ints(&[[2]])), QMat::from_ints(&[[0, 2], [0, 0]]));
    }

    #[test]
    fn perm_matrix_small_cases() {
        assert_eq!(perm_matrix::<Rat>(1, 3), QMat::identity(3));
        assert_eq!(perm_matrix::<Rat>(3, 1), QMat::identity(3));
        let e = perm_matrix::<Rat>(2, 2);
        let expected = QMat::from_ints(&[[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]]);
        assert_eq!(e, expected);
    }

    #[test]
    fn swap_rule_on_rectangular_factors() {
        let p = QMat::from_ints(&[[1, 2], [3, 4], [5, 6]]);
        let q = QMat::from_ints(&[[1, 0, -1, 2], [0, 3, 1, 1]]);
        let swapped = &(&perm_matrix::<Rat>(3, 2) * &kron(&q, &p)) * &perm_matrix::<Rat>(2, 4).transpose();
        assert_eq!(kron(&p, &q), swapped);
    }

    #[test]
    fn kron_identity_matches_kron() {
        let a = QMat::from_ints(&[[1, 2], [3, 4]]);
        assert_eq!(kron_identity(3, &a), kron(&QMat::identity(3), &a));
    }
}
