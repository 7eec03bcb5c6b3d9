use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::scalar::Scalar;

/// A linear map `K^{s x s} -> K^{r x c}`, stored by its images of the matrix
/// units `E_pq` in row-major `(p, q)` order.
#[derive(Clone, PartialEq)]
pub struct BlockLinearMap<T> {
    s_in: usize,
    r_out: usize,
    c_out: usize,
    images: Vec<Mat<T>>,
}

impl<T: std::fmt::Display> std::fmt::Debug for BlockLinearMap<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("BlockLinearMap")
            .field("s_in", &self.s_in)
            .field("out", &(self.r_out, self.c_out))
            .field("images", &self.images)
            .finish()
    }
}

impl<T: Scalar> BlockLinearMap<T> {
    pub fn new(s_in: usize, r_out: usize, c_out: usize, images: Vec<Mat<T>>) -> Result<Self> {
        if images.len() != s_in * s_in {
            return Err(Error::Shape(format!(
                "{} basis images for a map on {s_in}x{s_in} matrices",
                images.len()
            )));
        }
        if let Some(bad) = images.iter().find(|m| m.shape() != (r_out, c_out)) {
            return Err(Error::Shape(format!(
                "basis image of shape {:?}, expected {:?}",
                bad.shape(),
                (r_out, c_out)
            )));
        }
        Ok(BlockLinearMap { s_in, r_out, c_out, images })
    }

    pub fn from_fn(s_in: usize, r_out: usize, c_out: usize, mut f: impl FnMut(&Mat<T>) -> Mat<T>) -> Self {
        let images = (0..s_in * s_in)
            .map(|k| f(&Mat::unit(s_in, s_in, k / s_in, k % s_in)))
            .collect();
        BlockLinearMap { s_in, r_out, c_out, images }
    }

    pub fn zero(s_in: usize, r_out: usize, c_out: usize) -> Self {
        Self::from_fn(s_in, r_out, c_out, |_| Mat::zeros(r_out, c_out))
    }

    pub fn identity(s: usize) -> Self {
        Self::from_fn(s, s, s, Mat::clone)
    }

    pub fn s_in(&self) -> usize {
        self.s_in
    }

    pub fn out_shape(&self) -> (usize, usize) {
        (self.r_out, self.c_out)
    }

    pub fn images(&self) -> &[Mat<T>] {
        &self.images
    }

    /// Image of the matrix unit `E_pq`.
    pub fn image(&self, p: usize, q: usize) -> &Mat<T> {
        &self.images[p * self.s_in + q]
    }

    /// Image of the basis unit with flat index `k = p * s + q`.
    pub fn image_flat(&self, k: usize) -> &Mat<T> {
        &self.images[k]
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().all(Mat::is_zero)
    }

    pub fn apply(&self, z: &Mat<T>) -> Mat<T> {
        debug_assert_eq!(z.shape(), (self.s_in, self.s_in));
        let mut out = Mat::zeros(self.r_out, self.c_out);
        for p in 0..self.s_in {
            for q in 0..self.s_in {
                let w = &z[(p, q)];
                if !w.is_zero() {
                    out = &out + &self.image(p, q).scale(w);
                }
            }
        }
        out
    }

    /// Blockwise extension `(X)T`: `X` is viewed as an `n x m` grid of
    /// `s x s` blocks and the map is applied to each block, giving an
    /// `(r n) x (c m)` matrix.
    pub fn block_apply(&self, x: &Mat<T>) -> Result<Mat<T>> {
        let s = self.s_in;
        if s == 0 || !x.rows().is_multiple_of(s) || !x.cols().is_multiple_of(s) {
            return Err(Error::Shape(format!(
                "{:?} matrix is not a grid of {s}x{s} blocks",
                x.shape()
            )));
        }
        let (n, m) = (x.rows() / s, x.cols() / s);
        let mut out = Mat::zeros(self.r_out * n, self.c_out * m);
        for i in 0..n {
            for j in 0..m {
                let blk = x.block(i * s, j * s, s, s);
                if !blk.is_zero() {
                    out.set_block(i * self.r_out, j * self.c_out, &self.apply(&blk));
                }
            }
        }
        Ok(out)
    }

    /// Square blockwise extension at block level `m`.
    pub fn block_apply_level(&self, x: &Mat<T>, m: usize) -> Result<Mat<T>> {
        if x.shape() != (self.s_in * m, self.s_in * m) {
            return Err(Error::Shape(format!(
                "{:?} matrix is not {m}x{m} blocks of size {}",
                x.shape(),
                self.s_in
            )));
        }
        self.block_apply(x)
    }

    fn map_images(&self, r_out: usize, c_out: usize, f: impl Fn(&Mat<T>) -> Mat<T>) -> Self {
        BlockLinearMap { s_in: self.s_in, r_out, c_out, images: self.images.iter().map(f).collect() }
    }

    /// `Z -> M T(Z)`.
    pub fn left_mul(&self, m: &Mat<T>) -> Result<Self> {
        if m.cols() != self.r_out {
            return Err(Error::Shape(format!("left factor {:?} for output {:?}", m.shape(), self.out_shape())));
        }
        Ok(self.map_images(m.rows(), self.c_out, |img| m * img))
    }

    /// `Z -> T(Z) M`.
    pub fn right_mul(&self, m: &Mat<T>) -> Result<Self> {
        if m.rows() != self.c_out {
            return Err(Error::Shape(format!("right factor {:?} for output {:?}", m.shape(), self.out_shape())));
        }
        Ok(self.map_images(self.r_out, m.cols(), |img| img * m))
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map_images(self.r_out, self.c_out, |img| img.scale(c))
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a.try_add(b))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a.try_sub(b))
    }

    fn zip(&self, other: &Self, f: impl Fn(&Mat<T>, &Mat<T>) -> Result<Mat<T>>) -> Result<Self> {
        if self.s_in != other.s_in {
            return Err(Error::Shape("maps on different block sizes".into()));
        }
        let images = self.images.iter().zip(&other.images).map(|(a, b)| f(a, b)).collect::<Result<Vec<_>>>()?;
        let (r, c) = images.first().map_or((self.r_out, self.c_out), Mat::shape);
        Ok(BlockLinearMap { s_in: self.s_in, r_out: r, c_out: c, images })
    }

    /// Combines several maps on the same input space, image by image.
    pub fn combine(parts: &[&Self], f: impl Fn(&[&Mat<T>]) -> Result<Mat<T>>) -> Result<Self> {
        let s = parts.first().map(|p| p.s_in).ok_or_else(|| Error::Shape("no maps to combine".into()))?;
        if parts.iter().any(|p| p.s_in != s) {
            return Err(Error::Shape("maps on different block sizes".into()));
        }
        let images = (0..s * s)
            .map(|k| f(&parts.iter().map(|p| &p.images[k]).collect::<Vec<_>>()))
            .collect::<Result<Vec<_>>>()?;
        let (r, c) = images[0].shape();
        BlockLinearMap::new(s, r, c, images)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::kron::kron;
    use crate::{QMat, Rat};

    fn trace_times_identity() -> BlockLinearMap<Rat> {
        BlockLinearMap::from_fn(2, 2, 2, |z| QMat::scalar(2, &z.trace()))
    }

    #[test]
    fn level_one_is_plain_evaluation() {
        let t = trace_times_identity();
        let z = QMat::from_ints(&[[3, 1], [4, 5]]);
        assert_eq!(t.block_apply_level(&z, 1).unwrap(), t.apply(&z));
        assert_eq!(t.apply(&z), QMat::scalar(2, &Rat::from_int(8)));
    }

    #[test]
    fn identity_map_is_identity_at_every_level() {
        let id = BlockLinearMap::<Rat>::identity(2);
        let x = QMat::from_fn(6, 6, |i, j| Rat::from_int((i * 7 + j * 3) as i64 % 5 - 2));
        assert_eq!(id.block_apply_level(&x, 3).unwrap(), x);
    }

    #[test]
    fn trace_map_on_identity_tensor() {
        // hand expansion: the blocks of I_2 (x) W are W on the diagonal and 0 off it
        let w = QMat::from_ints(&[[2, -1], [7, 3]]);
        let x = kron(&QMat::identity(2), &w);
        let out = trace_times_identity().block_apply_level(&x, 2).unwrap();
        assert_eq!(out, kron(&QMat::identity(2), &QMat::scalar(2, &Rat::from_int(5))));
    }

    #[test]
    fn rejects_bad_sizes() {
        let t = trace_times_identity();
        assert!(t.block_apply(&QMat::zeros(3, 3)).is_err());
        assert!(t.block_apply_level(&QMat::zeros(4, 4), 3).is_err());
        assert!(BlockLinearMap::<Rat>::new(2, 1, 1, vec![QMat::zeros(1, 1)]).is_err());
    }

    #[test]
    fn rectangular_grids() {
        let t = trace_times_identity();
        let x = QMat::from_fn(2, 4, |i, j| Rat::from_int((i + j) as i64));
        let out = t.block_apply(&x).unwrap();
        assert_eq!(out.shape(), (2, 4));
        assert_eq!(out.block(0, 2, 2, 2), QMat::scalar(2, &Rat::from_int(6)));
    }
}
