//! Truncated formal power series in `t` over Q(L).
//!
//! A [`Series`] stores the plain coefficients of `t^0 .. t^N` together with
//! the truncation order `N`; coefficients beyond `t^N` are unknown, not zero.
//! Truncation is a hard contract: arithmetic never extends precision, and
//! combining series with different truncation orders is an error rather than
//! a silent re-truncation. The umbral convention `a_k = k! * [t^k] f` is
//! confined to [`Series::coeff_fact`].

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::families::factorial;
use crate::scalar::LambdaRat;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Series {
    /// Plain coefficients of t^0 .. t^trunc; length is exactly trunc+1.
    coeffs: Vec<LambdaRat>,
}

impl Series {
    /// Builds a series from plain coefficients, zero-padding or cutting to
    /// the requested truncation order.
    pub fn from_coeffs(mut coeffs: Vec<LambdaRat>, trunc: usize) -> Self {
        coeffs.resize(trunc + 1, LambdaRat::zero());
        Series { coeffs }
    }

    pub fn zero(trunc: usize) -> Self {
        Series {
            coeffs: vec![LambdaRat::zero(); trunc + 1],
        }
    }

    pub fn one(trunc: usize) -> Self {
        Series::monomial(LambdaRat::one(), 0, trunc)
    }

    /// The series `t`.
    pub fn t(trunc: usize) -> Self {
        Series::monomial(LambdaRat::one(), 1, trunc)
    }

    /// `c * t^k` (zero if `k > trunc`).
    pub fn monomial(c: LambdaRat, k: usize, trunc: usize) -> Self {
        let mut s = Series::zero(trunc);
        if k <= trunc {
            s.coeffs[k] = c;
        }
        s
    }

    /// `exp(y*t) = sum y^k t^k / k!` up to the truncation order.
    pub fn exp(y: &LambdaRat, trunc: usize) -> Self {
        let mut coeffs = Vec::with_capacity(trunc + 1);
        let mut ypow = LambdaRat::one();
        for k in 0..=trunc {
            if k > 0 {
                ypow = &ypow * y;
            }
            let kfact = LambdaRat::from_integer(factorial(k as u64));
            coeffs.push(ypow.div(&kfact).expect("factorial is nonzero"));
        }
        Series { coeffs }
    }

    /// `exp(t)` with rational coefficients.
    pub fn exp_t(trunc: usize) -> Self {
        Series::exp(&LambdaRat::one(), trunc)
    }

    /// Truncation order `N`: coefficients of `t^0..t^N` are known.
    pub fn trunc(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Plain coefficient of `t^k` (must satisfy `k <= trunc`).
    pub fn coeff(&self, k: usize) -> &LambdaRat {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[LambdaRat] {
        &self.coeffs
    }

    /// Index of the first nonzero coefficient; `None` when the series is
    /// zero up to its truncation order.
    pub fn ord(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.ord().is_none()
    }

    /// A copy truncated down to `new_trunc` (callers align truncations
    /// explicitly; this never extends precision).
    pub fn truncated(&self, new_trunc: usize) -> Series {
        assert!(
            new_trunc <= self.trunc(),
            "truncated() cannot extend precision"
        );
        Series {
            coeffs: self.coeffs[..=new_trunc].to_vec(),
        }
    }

    fn check_same_trunc(&self, other: &Series) -> Result<()> {
        if self.trunc() == other.trunc() {
            Ok(())
        } else {
            Err(Error::TruncationMismatch)
        }
    }

    pub fn add(&self, other: &Series) -> Result<Series> {
        self.check_same_trunc(other)?;
        Ok(Series {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Series) -> Result<Series> {
        self.check_same_trunc(other)?;
        Ok(Series {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn neg(&self) -> Series {
        Series {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, c: &LambdaRat) -> Series {
        Series {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Cauchy product modulo `t^(trunc+1)`.
    pub fn mul(&self, other: &Series) -> Result<Series> {
        self.check_same_trunc(other)?;
        let n = self.trunc();
        let mut out = vec![LambdaRat::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(n + 1 - i).enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Ok(Series { coeffs: out })
    }

    /// Multiplicative inverse by coefficient recursion; requires a nonzero
    /// constant term.
    pub fn inverse(&self) -> Result<Series> {
        if self.coeffs[0].is_zero() {
            return Err(Error::NotInvertible);
        }
        let n = self.trunc();
        let c0_inv = self.coeffs[0].inv()?;
        let mut out = vec![LambdaRat::zero(); n + 1];
        out[0] = c0_inv.clone();
        for k in 1..=n {
            let mut acc = LambdaRat::zero();
            for i in 1..=k {
                if self.coeffs[i].is_zero() {
                    continue;
                }
                acc = &acc + &(&self.coeffs[i] * &out[k - i]);
            }
            out[k] = -&(&acc * &c0_inv);
        }
        Ok(Series { coeffs: out })
    }

    /// Composition `self(inner(t))` by Horner's rule; `inner` must have zero
    /// constant term for the composition to be defined formally.
    pub fn compose(&self, inner: &Series) -> Result<Series> {
        self.check_same_trunc(inner)?;
        if !inner.coeffs[0].is_zero() {
            return Err(Error::NotDelta);
        }
        let n = self.trunc();
        let mut acc = Series::monomial(self.coeffs[n].clone(), 0, n);
        for k in (0..n).rev() {
            acc = acc.mul(inner)?;
            acc.coeffs[0] = &acc.coeffs[0] + &self.coeffs[k];
        }
        Ok(acc)
    }

    /// Compositional inverse of a delta series, solved order by order:
    /// the `t^m` coefficient of `self(h(t))` is linear in `h_m` with slope
    /// `self_1`, so each order is fixed by one division.
    pub fn comp_inverse(&self) -> Result<Series> {
        if self.ord() != Some(1) {
            return Err(Error::NotDelta);
        }
        let n = self.trunc();
        let f1_inv = self.coeffs[1].inv()?;
        let mut h = Series::zero(n);
        h.coeffs[1] = f1_inv.clone();
        for m in 2..=n {
            let g = self.truncated(m).compose(&h.truncated(m))?;
            h.coeffs[m] = -&(&g.coeffs[m] * &f1_inv);
        }
        Ok(h)
    }

    /// `self^k` modulo the truncation; negative `k` inverts first and
    /// therefore requires an invertible series.
    pub fn pow(&self, k: i64) -> Result<Series> {
        if k == 0 {
            return Ok(Series::one(self.trunc()));
        }
        let base = if k < 0 { self.inverse()? } else { self.clone() };
        let mut exp = k.unsigned_abs();
        let mut acc = Series::one(self.trunc());
        let mut sq = base;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&sq)?;
            }
            exp >>= 1;
            if exp > 0 {
                sq = sq.mul(&sq)?;
            }
        }
        Ok(acc)
    }

    /// Quotient of two series with `ord(self) >= ord(den)`: the common power
    /// of `t` is shifted out and the remaining unit is inverted. The result
    /// is truncated at `trunc - ord(den)`.
    pub fn delta_quotient(&self, den: &Series) -> Result<Series> {
        self.check_same_trunc(den)?;
        let dord = den.ord().ok_or(Error::NotInvertible)?;
        if let Some(nord) = self.ord() {
            if nord < dord {
                return Err(Error::NotInvertible);
            }
        }
        let new_trunc = self.trunc() - dord;
        let num_shifted = Series {
            coeffs: self.coeffs[dord..].to_vec(),
        };
        let den_shifted = Series {
            coeffs: den.coeffs[dord..].to_vec(),
        };
        let quotient = num_shifted.mul(&den_shifted.inverse()?)?;
        debug_assert_eq!(quotient.trunc(), new_trunc);
        Ok(quotient)
    }

    /// The umbral coefficient `a_k = k! * [t^k] self`, i.e. the coefficient
    /// in the functional convention `f = sum a_k t^k / k!`; errors when `k`
    /// exceeds the truncation order.
    pub fn coeff_fact(&self, k: usize) -> Result<LambdaRat> {
        if k > self.trunc() {
            return Err(Error::TruncationMismatch);
        }
        Ok(&self.coeffs[k] * &LambdaRat::from_integer(factorial(k as u64)))
    }
}

/// A Sheffer pair `(g, f)`: `g` invertible (order 0) and `f` delta (order 1).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ShefferPair {
    g: Series,
    f: Series,
}

impl ShefferPair {
    pub fn new(g: Series, f: Series) -> Result<Self> {
        if g.ord() != Some(0) {
            return Err(Error::NotInvertible);
        }
        if f.ord() != Some(1) {
            return Err(Error::NotDelta);
        }
        if g.trunc() != f.trunc() {
            return Err(Error::TruncationMismatch);
        }
        Ok(ShefferPair { g, f })
    }

    pub fn g(&self) -> &Series {
        &self.g
    }

    pub fn f(&self) -> &Series {
        &self.f
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;
    use num_bigint::BigInt;

    fn int(n: i64) -> LambdaRat {
        LambdaRat::from_int(n)
    }

    fn rat(n: i64, d: i64) -> LambdaRat {
        LambdaRat::from_rational(&Rational::new(BigInt::from(n), BigInt::from(d)))
    }

    fn ser(coeffs: &[LambdaRat], trunc: usize) -> Series {
        Series::from_coeffs(coeffs.to_vec(), trunc)
    }

    #[test]
    fn mul_examples() {
        let t = Series::t(4);
        assert_eq!(t.mul(&t).unwrap(), Series::monomial(int(1), 2, 4));
        let a = ser(&[int(1), int(1)], 4);
        let b = ser(&[int(1), int(-1)], 4);
        assert_eq!(a.mul(&b).unwrap(), ser(&[int(1), int(0), int(-1)], 4));
        // e^t * e^t = e^{2t}: 1 + 2t + 2t^2 + 4/3 t^3
        let e = Series::exp_t(3);
        assert_eq!(
            e.mul(&e).unwrap(),
            ser(&[int(1), int(2), int(2), rat(4, 3)], 3)
        );
        assert_eq!(
            Series::t(3).mul(&Series::t(4)),
            Err(Error::TruncationMismatch)
        );
    }

    #[test]
    fn inverse_examples() {
        let one_minus_t = ser(&[int(1), int(-1)], 3);
        assert_eq!(
            one_minus_t.inverse().unwrap(),
            ser(&[int(1), int(1), int(1), int(1)], 3)
        );
        let e = Series::exp_t(2);
        assert_eq!(e.inverse().unwrap(), ser(&[int(1), int(-1), rat(1, 2)], 2));
        assert_eq!(Series::t(3).inverse(), Err(Error::NotInvertible));
    }

    #[test]
    fn compose_examples() {
        // 1/(1-t) composed with t^2 -> 1 + t^2 + t^4
        let geom = ser(&alloc::vec![int(1); 6], 5);
        let t2 = Series::monomial(int(1), 2, 5);
        assert_eq!(
            geom.compose(&t2).unwrap(),
            ser(&[int(1), int(0), int(1), int(0), int(1), int(0)], 5)
        );
        // (e^t - 1) o log(1+t) = t
        let em1 = Series::exp_t(4).sub(&Series::one(4)).unwrap();
        let log1p = ser(&[int(0), int(1), rat(-1, 2), rat(1, 3), rat(-1, 4)], 4);
        assert_eq!(em1.compose(&log1p).unwrap(), Series::t(4));
        let not_delta = ser(&[int(1), int(1)], 4);
        assert_eq!(Series::t(4).compose(&not_delta), Err(Error::NotDelta));
    }

    #[test]
    fn comp_inverse_examples() {
        assert_eq!(Series::t(3).comp_inverse().unwrap(), Series::t(3));
        // reversion of e^t - 1 is log(1+t) = t - t^2/2 + t^3/3
        let em1 = Series::exp_t(3).sub(&Series::one(3)).unwrap();
        assert_eq!(
            em1.comp_inverse().unwrap(),
            ser(&[int(0), int(1), rat(-1, 2), rat(1, 3)], 3)
        );
        // reversion of t*e^t: Lagrange coefficients (-1)^{n-1} n^{n-1} / n!
        let te = Series::exp_t(3).mul(&Series::t(3)).unwrap();
        assert_eq!(
            te.comp_inverse().unwrap(),
            ser(&[int(0), int(1), int(-1), rat(3, 2)], 3)
        );
        assert_eq!(Series::one(3).comp_inverse(), Err(Error::NotDelta));
    }

    #[test]
    fn pow_examples() {
        let one_plus_t = ser(&[int(1), int(1)], 3);
        assert_eq!(
            one_plus_t.pow(2).unwrap(),
            ser(&[int(1), int(2), int(1)], 3)
        );
        // t/(e^t - 1) = 1 - t/2 + t^2/12
        let em1 = Series::exp_t(3).sub(&Series::one(3)).unwrap();
        let bern = Series::t(3).delta_quotient(&em1).unwrap();
        assert_eq!(
            bern.pow(1).unwrap(),
            ser(&[int(1), rat(-1, 2), rat(1, 12)], 2)
        );
        assert_eq!(Series::t(3).pow(-1), Err(Error::NotInvertible));
    }

    #[test]
    fn exp_examples() {
        assert_eq!(Series::exp(&int(0), 3), Series::one(3));
        assert_eq!(
            Series::exp_t(3),
            ser(&[int(1), int(1), rat(1, 2), rat(1, 6)], 3)
        );
        let lam = LambdaRat::lambda();
        let expected = ser(&[int(1), -&lam, &lam.pow(2).unwrap() * &rat(1, 2)], 2);
        assert_eq!(Series::exp(&-&lam, 2), expected);
    }

    #[test]
    fn delta_quotient_examples() {
        // t / (t e^t) = e^{-t} truncated at order 3
        let te = Series::exp_t(4).mul(&Series::t(4)).unwrap();
        let q = Series::t(4).delta_quotient(&te).unwrap();
        assert_eq!(q, ser(&[int(1), int(-1), rat(1, 2), rat(-1, 6)], 3));
        // t^2 / t = t
        let t2 = Series::monomial(int(1), 2, 4);
        assert_eq!(t2.delta_quotient(&Series::t(4)).unwrap(), Series::t(3));
        assert_eq!(
            Series::t(4).delta_quotient(&Series::t(4)).unwrap(),
            Series::one(3)
        );
        assert_eq!(
            Series::t(4).delta_quotient(&Series::zero(4)),
            Err(Error::NotInvertible)
        );
    }

    #[test]
    fn coeff_fact_examples() {
        let e = Series::exp_t(4);
        assert_eq!(e.coeff_fact(3).unwrap(), int(1));
        let t2 = Series::monomial(int(1), 2, 4);
        assert_eq!(t2.coeff_fact(2).unwrap(), int(2));
        assert_eq!(t2.coeff_fact(5), Err(Error::TruncationMismatch));
    }

    #[test]
    fn sheffer_pair_guards() {
        let g = Series::exp_t(4);
        let f = Series::exp_t(4).sub(&Series::one(4)).unwrap();
        assert!(ShefferPair::new(g.clone(), f.clone()).is_ok());
        assert_eq!(
            ShefferPair::new(f.clone(), f.clone()).unwrap_err(),
            Error::NotInvertible
        );
        assert_eq!(
            ShefferPair::new(g, Series::one(4)).unwrap_err(),
            Error::NotDelta
        );
    }
}
