use crate::linalg::{BlockLinearMap, Mat};
use crate::realization::FMRealization;
use crate::scalar::Scalar;

use super::Subspace;

fn all_images<T: Scalar>(maps: &[BlockLinearMap<T>]) -> Vec<Mat<T>> {
    maps.iter().flat_map(|m| m.images().iter().cloned()).collect()
}

/// Smallest subspace of `K^L` containing the columns of every `B_k(E_pq)`
/// and invariant under every `A_k(E_pq)`.
pub fn controllability_span<T: Scalar>(r: &FMRealization<T>) -> Subspace<T> {
    let gens = all_images(r.b()).into_iter().flat_map(|b| (0..b.cols()).map(move |j| b.column(j)));
    Subspace::closure(r.state_dim(), gens, &all_images(r.a()))
}

/// Span of the rows of every `C A_{i1}(Z_1) ... A_{ij}(Z_j)`, as row vectors.
pub fn observable_space<T: Scalar>(r: &FMRealization<T>) -> Subspace<T> {
    let c = r.output();
    let gens = (0..c.rows()).map(|i| c.row(i).to_vec());
    let ops: Vec<_> = all_images(r.a()).iter().map(Mat::transpose).collect();
    Subspace::closure(r.state_dim(), gens, &ops)
}

/// Largest subspace of `K^L` killed by `C` and invariant under every
/// `A_k(E_pq)`: the common kernel of the observable rows.
pub fn unobservable_subspace<T: Scalar>(r: &FMRealization<T>) -> Subspace<T> {
    let obs = observable_space(r);
    if obs.dim() == 0 {
        return Subspace::full(r.state_dim());
    }
    Subspace::from_vectors(r.state_dim(), obs.basis_rows().kernel_basis())
}

pub fn is_controllable<T: Scalar>(r: &FMRealization<T>) -> bool {
    controllability_span(r).is_full()
}

pub fn is_observable<T: Scalar>(r: &FMRealization<T>) -> bool {
    observable_space(r).is_full()
}

pub fn is_minimal<T: Scalar>(r: &FMRealization<T>) -> bool {
    is_controllable(r) && is_observable(r)
}

/// `(P B, P A Q, C Q)` for a compression `P` (`r x L`) and embedding `Q`
/// (`L x r`) with `P Q = I`.
fn compress<T: Scalar>(r: &FMRealization<T>, p: &Mat<T>, q: &Mat<T>) -> FMRealization<T> {
    let a = r.a().iter().map(|ak| ak.left_mul(p).and_then(|m| m.right_mul(q))).collect::<crate::Result<Vec<_>>>();
    let b = r.b().iter().map(|bk| bk.left_mul(p)).collect::<crate::Result<Vec<_>>>();
    FMRealization::new(r.centre().clone(), r.feedthrough().clone(), r.output() * q, a.unwrap(), b.unwrap())
        .expect("compression keeps shapes consistent")
}

/// Controllable and observable realization with the same coefficients.
///
/// First restricts to the controllability span, then passes to the quotient
/// by the unobservable subspace (identified with the observable row space).
pub fn minimize<T: Scalar>(r: &FMRealization<T>) -> FMRealization<T> {
    let ctrb = controllability_span(r);
    let r1 = if ctrb.is_full() {
        r.clone()
    } else {
        compress(r, &ctrb.pivot_selector(), &ctrb.basis_columns())
    };
    let obs = observable_space(&r1);
    if obs.is_full() {
        r1
    } else {
        compress(&r1, &obs.basis_rows(), &obs.pivot_selector().transpose())
    }
}

/// Products `A_{i1}(Z_1) ... A_{ij}(Z_j)` over all words and basis tuples
/// with `j <= len`, shortest first.
fn word_products<T: Scalar>(r: &FMRealization<T>, len: usize) -> Vec<Mat<T>> {
    let a = all_images(r.a());
    let mut layer = vec![Mat::identity(r.state_dim())];
    let mut out = layer.clone();
    for _ in 0..len {
        layer = layer.iter().flat_map(|p| a.iter().map(move |ai| p * ai)).collect();
        out.extend(layer.iter().cloned());
    }
    out
}

/// Truncated controllability matrix: the row of blocks
/// `A_{i1}(Z_1) ... A_{ij}(Z_j) B_k(Z_{j+1})` with `j <= len`.
pub fn controllability_matrix_trunc<T: Scalar>(r: &FMRealization<T>, len: usize) -> Mat<T> {
    let b = all_images(r.b());
    let blocks: Vec<Mat<T>> = word_products(r, len).iter().flat_map(|p| b.iter().map(move |bk| p * bk)).collect();
    Mat::hstack(&blocks.iter().collect::<Vec<_>>()).expect("blocks share their row count")
}

/// Truncated observability matrix: the column of blocks
/// `C A_{i1}(Z_1) ... A_{ij}(Z_j)` with `j <= len`.
pub fn observability_matrix_trunc<T: Scalar>(r: &FMRealization<T>, len: usize) -> Mat<T> {
    let blocks: Vec<Mat<T>> = word_products(r, len).iter().map(|p| r.output() * p).collect();
    Mat::vstack(&blocks.iter().collect::<Vec<_>>()).expect("blocks share their column count")
}

/// Some `X` with `M X = I`, if `M` has full row rank.
pub fn right_inverse<T: Scalar>(m: &Mat<T>) -> Option<Mat<T>> {
    if m.rank() != m.rows() {
        return None;
    }
    m.solve(&Mat::identity(m.rows())).ok().flatten()
}

/// Some `X` with `X M = I`, if `M` has full column rank.
pub fn left_inverse<T: Scalar>(m: &Mat<T>) -> Option<Mat<T>> {
    right_inverse(&m.transpose()).map(|x| x.transpose())
}
