//! Scalar field abstraction.
//!
//! Everything in this crate is generic over a [`Scalar`]: a field whose
//! elements can be combined by reference. Exactness of rank, kernel and
//! domain tests relies on `is_zero` being exact, which holds for [`Rat`]
//! (the intended instance) but only approximately for `f32`/`f64`.
//!
//! [`Rat`]: crate::Rat

use std::fmt::{Debug, Display};

use num_traits::{FromPrimitive, Num, RefNum};

/// A field with by-reference arithmetic.
pub trait Scalar:
    Num + Clone + PartialEq + Debug + Display + FromPrimitive + Send + Sync + 'static
{
    fn add_ref(&self, rhs: &Self) -> Self;
    fn sub_ref(&self, rhs: &Self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn div_ref(&self, rhs: &Self) -> Self;
    fn neg_ref(&self) -> Self;

    fn from_int(v: i64) -> Self {
        Self::from_i64(v).expect("every field contains the integers")
    }

    fn recip_ref(&self) -> Self {
        Self::one().div_ref(self)
    }
}

impl<T> Scalar for T
where
    T: Num + Clone + PartialEq + Debug + Display + FromPrimitive + Send + Sync + 'static,
    for<'a> &'a T: RefNum<T> + std::ops::Neg<Output = T>,
{
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn div_ref(&self, rhs: &Self) -> Self {
        self / rhs
    }
    fn neg_ref(&self) -> Self {
        -self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rat;

    fn third<T: Scalar>() -> T {
        T::one().div_ref(&T::from_int(3))
    }

    #[test]
    fn rational_and_float_instances() {
        let q: Rat = third();
        assert_eq!(q.mul_ref(&Rat::from_int(3)), Rat::from_int(1));
        let f: f64 = third();
        assert!((f * 3.0 - 1.0).abs() < 1e-15);
        assert_eq!(Rat::from_int(-4).neg_ref(), Rat::from_int(4));
        assert_eq!(Rat::from_int(4).recip_ref().to_string(), "1/4");
    }
}
