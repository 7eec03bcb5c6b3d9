use crate::error::{Error, Result};
use crate::linalg::{kron_identity, Mat};
use crate::point::MatTuple;
use crate::scalar::Scalar;

use super::{LlaCertified, Word};

/// `Δ_{j_k} ... Δ_{j_1} f (X^0, ..., X^k)(Z^1, ..., Z^k)` for a word
/// `g_{j_1} ... g_{j_k}`.
///
/// Builds the block upper bidiagonal point with `X^i` on the diagonal and
/// `Z^i` in block `(i-1, i)` of coordinate `j_i` (zero in the others),
/// evaluates `f` there once and returns the top-right block. The block
/// sizes of the value are inferred proportionally, so `f` may return
/// values whose size is a fixed multiple of the level.
pub fn delta_block<T: Scalar>(
    f: impl Fn(&MatTuple<T>) -> Result<Mat<T>>,
    w: &Word,
    points: &[MatTuple<T>],
    dirs: &[Mat<T>],
) -> Result<Mat<T>> {
    if points.len() != w.len() + 1 {
        return Err(Error::Arity { expected: w.len() + 1, got: points.len() });
    }
    if dirs.len() != w.len() {
        return Err(Error::Arity { expected: w.len(), got: dirs.len() });
    }
    let d = points[0].d();
    if points.iter().any(|p| p.d() != d) {
        return Err(Error::Shape("points have different numbers of variables".into()));
    }
    if w.max_letter() > d {
        return Err(Error::Arity { expected: d, got: w.max_letter() });
    }
    let sizes: Vec<usize> = points.iter().map(MatTuple::level).collect();
    for (i, z) in dirs.iter().enumerate() {
        if z.shape() != (sizes[i], sizes[i + 1]) {
            return Err(Error::Shape(format!(
                "direction {} is {:?}, expected {:?}",
                i + 1,
                z.shape(),
                (sizes[i], sizes[i + 1])
            )));
        }
    }
    let total: usize = sizes.iter().sum();
    let offsets: Vec<usize> = sizes.iter().scan(0, |acc, &n| Some(std::mem::replace(acc, *acc + n))).collect();
    let mats = (0..d)
        .map(|k| {
            let mut big = Mat::zeros(total, total);
            for (p, &off) in points.iter().zip(&offsets) {
                big.set_block(off, off, p.get(k));
            }
            for (i, (&j, z)) in w.letters().iter().zip(dirs).enumerate() {
                if j == k + 1 {
                    big.set_block(offsets[i], offsets[i + 1], z);
                }
            }
            big
        })
        .collect();
    let value = f(&MatTuple::new(mats)?)?;
    let (vr, vc) = value.shape();
    let (n0, nk) = (sizes[0], sizes[w.len()]);
    if (vr * n0) % total != 0 || (vc * nk) % total != 0 {
        return Err(Error::Shape("value size is not a multiple of the level".into()));
    }
    let (rows, cols) = (vr * n0 / total, vc * nk / total);
    Ok(value.block(0, vc - cols, rows, cols))
}

fn check_dirs<T: Scalar>(level: usize, w: &Word, dirs: &[Mat<T>]) -> Result<()> {
    if dirs.len() != w.len() {
        return Err(Error::Arity { expected: w.len(), got: dirs.len() });
    }
    if dirs.iter().any(|z| z.shape() != (level, level)) {
        return Err(Error::Shape(format!("directions must be {level} x {level}")));
    }
    Ok(())
}

/// `(Z^1) A_{j1} ... (Z^k) A_{jk}` at block level `m`.
fn a_chain<T: Scalar>(cert: &LlaCertified<'_, T>, letters: &[usize], dirs: &[Mat<T>], m: usize) -> Result<Mat<T>> {
    let r = cert.realization();
    let mut acc = Mat::identity(r.state_dim() * m);
    for (&j, z) in letters.iter().zip(dirs) {
        acc = &acc * &r.a()[j - 1].block_apply_level(z, m)?;
    }
    Ok(acc)
}

/// `Δ_ω R (X, I_m (x) Y, ..., I_m (x) Y)(Z^1, ..., Z^k)` in closed form:
/// `(I_m (x) C) Λ(X)^{-1} (Z^1) A_{j1} ... (Z^{k-1}) A_{j(k-1)} (Z^k) B_{jk}`.
/// The empty word gives `R(X)`.
pub fn delta_closed_form<T: Scalar>(cert: &LlaCertified<'_, T>, w: &Word, x: &MatTuple<T>, dirs: &[Mat<T>]) -> Result<Mat<T>> {
    let r = cert.realization();
    let m = r.block_level(x)?;
    check_dirs(x.level(), w, dirs)?;
    if w.max_letter() > r.d() {
        return Err(Error::Arity { expected: r.d(), got: w.max_letter() });
    }
    let Some((&last, init)) = w.letters().split_last() else {
        return r.eval(x);
    };
    let chain = a_chain(cert, init, dirs, m)?;
    let tail = r.b()[last - 1].block_apply_level(&dirs[w.len() - 1], m)?;
    let left = &kron_identity(m, r.output()) * &r.pencil_inverse(x)?;
    Ok(&(&left * &chain) * &tail)
}

/// `Δ_ω Λ^{-1} (I_m (x) Y, ..., I_m (x) Y, X)(Z^1, ..., Z^k)` in closed form:
/// `(Z^1) A_{j1} ... (Z^k) A_{jk} Λ(X)^{-1}`.
pub fn delta_closed_form_pencil_inverse<T: Scalar>(
    cert: &LlaCertified<'_, T>,
    w: &Word,
    x: &MatTuple<T>,
    dirs: &[Mat<T>],
) -> Result<Mat<T>> {
    let r = cert.realization();
    let m = r.block_level(x)?;
    check_dirs(x.level(), w, dirs)?;
    if w.max_letter() > r.d() {
        return Err(Error::Arity { expected: r.d(), got: w.max_letter() });
    }
    Ok(&a_chain(cert, w.letters(), dirs, m)? * &r.pencil_inverse(x)?)
}
