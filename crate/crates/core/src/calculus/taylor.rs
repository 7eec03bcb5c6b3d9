use crate::error::{Error, Result};
use crate::linalg::{kron_identity, Mat, TensorMat};
use crate::point::MatTuple;
use crate::realization::FMRealization;
use crate::scalar::Scalar;

use super::Word;

fn check_letters<T: Scalar>(r: &FMRealization<T>, w: &Word) -> Result<()> {
    if w.max_letter() > r.d() {
        return Err(Error::Arity { expected: r.d(), got: w.max_letter() });
    }
    Ok(())
}

/// Taylor–Taylor coefficient `R_ω(Z_1, ..., Z_l)`: `D` for the empty word,
/// otherwise `C A_{i1}(Z_1) ... A_{i(l-1)}(Z_{l-1}) B_{il}(Z_l)`.
pub fn tt_coefficient<T: Scalar>(r: &FMRealization<T>, w: &Word, z: &[Mat<T>]) -> Result<Mat<T>> {
    check_letters(r, w)?;
    if z.len() != w.len() {
        return Err(Error::Arity { expected: w.len(), got: z.len() });
    }
    let s = r.s();
    if z.iter().any(|zi| zi.shape() != (s, s)) {
        return Err(Error::Shape(format!("coefficient arguments must be {s} x {s}")));
    }
    let Some((&last, init)) = w.letters().split_last() else {
        return Ok(r.feedthrough().clone());
    };
    let mut acc = r.output().clone();
    for (&k, zi) in init.iter().zip(z) {
        acc = &acc * &r.a()[k - 1].apply(zi);
    }
    Ok(&acc * &r.b()[last - 1].apply(&z[w.len() - 1]))
}

/// [`tt_coefficient`] on matrix units given by flat indices.
pub(crate) fn tt_coefficient_units<T: Scalar>(r: &FMRealization<T>, letters: &[usize], units: &[usize]) -> Mat<T> {
    let Some((&last, init)) = letters.split_last() else {
        return r.feedthrough().clone();
    };
    let mut acc = r.output().clone();
    for (&k, &u) in init.iter().zip(units) {
        acc = &acc * r.a()[k - 1].image_flat(u);
    }
    &acc * r.b()[last - 1].image_flat(units[letters.len() - 1])
}

/// Sum of the Taylor–Taylor series at `X`, through the Neumann series of
/// the pencil. Fails with [`Error::NotNilpotent`] unless
/// `P = Σ_k (X_k - I_m (x) Y_k) A_k` satisfies `P^{Lm} = 0`.
pub fn tt_series_eval<T: Scalar>(r: &FMRealization<T>, x: &MatTuple<T>) -> Result<Mat<T>> {
    let m = r.block_level(x)?;
    let p = r.state_term(x)?;
    let n = p.rows();
    let mut neumann = Mat::identity(n);
    let mut power = Mat::identity(n);
    let mut vanished = n == 0;
    for _ in 0..n {
        power = &power * &p;
        if power.is_zero() {
            vanished = true;
            break;
        }
        neumann = &neumann + &power;
    }
    if !vanished {
        return Err(Error::NotNilpotent);
    }
    let d = kron_identity(m, r.feedthrough());
    Ok(&d + &(&(&kron_identity(m, r.output()) * &neumann) * &r.input_term(x)?))
}

/// Literal sum `Σ_ω (X - I_m (x) Y)^{⊙ω} R_ω` over faux powers, up to words
/// of length `s m`. Fails with [`Error::NotNilpotent`] if a faux power of
/// length `s m + 1` is nonzero.
pub fn tt_series_eval_bruteforce<T: Scalar>(r: &FMRealization<T>, x: &MatTuple<T>) -> Result<Mat<T>> {
    let m = r.block_level(x)?;
    let s = r.s();
    let u = x.minus_centre(r.centre())?;
    let factors = u.mats().iter().map(|uk| TensorMat::from_blocked(uk, s)).collect::<Result<Vec<_>>>()?;
    let mut total = kron_identity(m, r.feedthrough());
    let mut layer: Vec<(Vec<usize>, TensorMat<T>)> = vec![(Vec::new(), TensorMat::identity(m, s))];
    for len in 1..=s * m + 1 {
        let mut next = Vec::new();
        for (letters, power) in &layer {
            for (k, f) in factors.iter().enumerate() {
                let q = power.faux_product(f)?;
                if !q.is_zero() {
                    let mut w = letters.clone();
                    w.push(k + 1);
                    next.push((w, q));
                }
            }
        }
        if next.is_empty() {
            return Ok(total);
        }
        if len > s * m {
            return Err(Error::NotNilpotent);
        }
        for (letters, power) in &next {
            total = &total + &power.contract(s, s, |units| tt_coefficient_units(r, letters, units));
        }
        layer = next;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;
    use crate::sample::{nilpotent_point, random_tuple};
    use crate::synthesis::{realize_expr, realize_var};
    use crate::{QMat, Rat};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn centre() -> MatTuple<Rat> {
        MatTuple::new(vec![QMat::from_ints(&[[1, 2], [0, -1]]), QMat::from_ints(&[[0, 0], [1, 2]])]).unwrap()
    }

    #[test]
    fn coordinate_coefficients() {
        let r = realize_var(1, &centre()).unwrap();
        let z = QMat::from_ints(&[[1, 2], [3, 4]]);
        assert_eq!(tt_coefficient(&r, &Word::letter(1), std::slice::from_ref(&z)).unwrap(), z);
        assert!(tt_coefficient(&r, &Word::letter(2), std::slice::from_ref(&z)).unwrap().is_zero());
        let w = Word::parse("g1g1").unwrap();
        assert!(tt_coefficient(&r, &w, &[z.clone(), z.clone()]).unwrap().is_zero());
        assert_eq!(tt_coefficient(&r, &Word::empty(), &[]).unwrap(), *centre().get(0));
        assert_eq!(tt_coefficient(&r, &w, &[z]), Err(Error::Arity { expected: 2, got: 1 }));
    }

    #[test]
    fn product_coefficients_at_zero() {
        let y = MatTuple::new(vec![QMat::zeros(1, 1), QMat::zeros(1, 1)]).unwrap();
        let r = realize_expr(&parse("x1*x2").unwrap(), &y).unwrap();
        let one = QMat::identity(1);
        let c12 = tt_coefficient(&r, &Word::parse("g1g2").unwrap(), &[one.clone(), one.clone()]).unwrap();
        let c21 = tt_coefficient(&r, &Word::parse("g2g1").unwrap(), &[one.clone(), one]).unwrap();
        assert_eq!(c12, QMat::identity(1));
        assert!(c21.is_zero());
    }

    #[test]
    fn series_agree_on_nilpotent_points() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let y = centre();
        for text in ["x1*x2 + x2", "(1 + x1*x2)^-1", "x1*(x2 + 3)^-1*x1 - 2"] {
            let r = realize_expr(&parse(text).unwrap(), &y).unwrap();
            for m in 1..=2 {
                let x = nilpotent_point(&mut rng, &y, m, 2);
                let v = r.eval(&x).unwrap();
                assert_eq!(tt_series_eval(&r, &x).unwrap(), v, "{text}");
                assert_eq!(tt_series_eval_bruteforce(&r, &x).unwrap(), v, "{text}");
            }
            let c = y.kron_identity(2);
            assert_eq!(tt_series_eval(&r, &c).unwrap(), kron_identity(2, r.feedthrough()));
        }
    }

    #[test]
    fn generic_points_are_not_nilpotent() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let r = realize_expr(&parse("(1 + x1*x2)^-1").unwrap(), &centre()).unwrap();
        let x = random_tuple(&mut rng, 2, 2, 3);
        assert_eq!(tt_series_eval(&r, &x), Err(Error::NotNilpotent));
        assert_eq!(tt_series_eval_bruteforce(&r, &x), Err(Error::NotNilpotent));
    }
}
