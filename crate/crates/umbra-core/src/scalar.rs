//! Exact arithmetic in the field Q(L) of rational functions in the formal
//! parameter `L` (lambda).
//!
//! An [`IntPoly`] is an integer-coefficient polynomial in `L`; a [`LambdaRat`]
//! is a reduced, sign-normalized ratio of two of them. Reduction divides out
//! both the integer content and the polynomial gcd, and forces a positive
//! leading coefficient on the denominator, so equality of values coincides
//! with equality of representations and `PartialEq` is a plain field compare.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational number, used for specializing `L` and for CLI parameters.
pub type Rational = num_rational::BigRational;

/// Integer-coefficient polynomial in the parameter `L`, index = degree.
///
/// Canonical form: no trailing zero coefficients; the zero polynomial is the
/// empty coefficient vector.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPoly::constant(BigInt::one())
    }

    /// The polynomial `L` itself.
    pub fn lambda() -> Self {
        IntPoly::from_coeffs(vec![BigInt::zero(), BigInt::one()])
    }

    pub fn constant(c: BigInt) -> Self {
        IntPoly::from_coeffs(vec![c])
    }

    /// Builds from low-to-high coefficients, trimming trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    /// Convenience constructor from small coefficients, low to high.
    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPoly::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree in `L`; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Leading coefficient; zero for the zero polynomial.
    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.coeff(k) + other.coeff(k));
        }
        IntPoly::from_coeffs(out)
    }

    pub fn sub(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.coeff(k) - other.coeff(k));
        }
        IntPoly::from_coeffs(out)
    }

    pub fn neg(&self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::from_coeffs(out)
    }

    pub fn scale(&self, c: &BigInt) -> IntPoly {
        if c.is_zero() {
            return IntPoly::zero();
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Derivative with respect to `L`.
    pub fn derivative(&self) -> IntPoly {
        if self.coeffs.len() <= 1 {
            return IntPoly::zero();
        }
        IntPoly::from_coeffs(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c * BigInt::from(i + 1))
                .collect(),
        )
    }

    /// Horner evaluation at a rational point.
    pub fn eval(&self, v: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * v + Rational::from(c.clone());
        }
        acc
    }

    /// Gcd of all coefficients, nonnegative; zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// `self` divided by its content; sign is kept on the leading coefficient.
    pub fn primitive_part(&self) -> IntPoly {
        let c = self.content();
        if c.is_zero() || c.is_one() {
            return self.clone();
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|a| a / &c).collect(),
        }
    }

    /// Pseudo-remainder of `self` by `d`: the remainder of
    /// `lc(d)^(deg self - deg d + 1) * self` under long division by `d`.
    fn pseudo_rem(&self, d: &IntPoly) -> IntPoly {
        let dd = d.degree().expect("pseudo_rem by zero polynomial");
        let mut r = self.clone();
        let lc = d.leading();
        while let Some(rd) = r.degree() {
            if rd < dd {
                break;
            }
            let shift = rd - dd;
            let rl = r.leading();
            // r <- lc*r - rl*L^shift*d
            let mut out = vec![BigInt::zero(); rd + 1];
            for (k, c) in r.coeffs.iter().enumerate() {
                out[k] = c * &lc;
            }
            for (k, c) in d.coeffs.iter().enumerate() {
                out[k + shift] -= c * &rl;
            }
            r = IntPoly::from_coeffs(out);
        }
        r
    }

    /// Exact division, panicking if `d` does not divide `self` in `Z[L]`.
    /// Only called with divisors produced by [`IntPoly::gcd`].
    pub fn div_exact(&self, d: &IntPoly) -> IntPoly {
        assert!(!d.is_zero(), "exact division by zero polynomial");
        if self.is_zero() {
            return IntPoly::zero();
        }
        let dd = d.degree().unwrap();
        let sd = self.degree().unwrap();
        assert!(sd >= dd, "exact division with too-small dividend");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); sd - dd + 1];
        let lc = d.leading();
        for k in (0..quot.len()).rev() {
            let top = rem[k + dd].clone();
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(&lc);
            assert!(r.is_zero(), "division is not exact");
            for (j, c) in d.coeffs.iter().enumerate() {
                rem[k + j] -= c * &q;
            }
            quot[k] = q;
        }
        assert!(rem.iter().all(|c| c.is_zero()), "division is not exact");
        IntPoly::from_coeffs(quot)
    }

    /// Polynomial gcd in `Z[L]` via content extraction and a primitive
    /// pseudo-remainder sequence. The result is canonical: primitive part
    /// with positive leading coefficient, scaled by the gcd of contents.
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() {
            return other.abs_normalized();
        }
        if other.is_zero() {
            return self.abs_normalized();
        }
        let content_gcd = self.content().gcd(&other.content());
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.degree() < b.degree() {
            core::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive_part();
            a = b;
            b = r;
        }
        let mut g = a;
        if g.leading().is_negative() {
            g = g.neg();
        }
        g.scale(&content_gcd)
    }

    fn abs_normalized(&self) -> IntPoly {
        if self.leading().is_negative() {
            self.neg()
        } else {
            self.clone()
        }
    }
}

/// Element of Q(L): a reduced ratio `num/den` of integer polynomials in `L`.
///
/// Invariants: `den` is nonzero with positive leading coefficient, and
/// `gcd(num, den) = 1` (content included), so equal values have identical
/// representations.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LambdaRat {
    num: IntPoly,
    den: IntPoly,
}

impl LambdaRat {
    /// Builds and canonicalizes `num/den`. Errors if `den` is zero.
    pub fn new(num: IntPoly, den: IntPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: IntPoly, den: IntPoly) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return LambdaRat {
                num: IntPoly::zero(),
                den: IntPoly::one(),
            };
        }
        let g = num.gcd(&den);
        let mut num = num.div_exact(&g);
        let mut den = den.div_exact(&g);
        if den.leading().is_negative() {
            num = num.neg();
            den = den.neg();
        }
        LambdaRat { num, den }
    }

    pub fn zero() -> Self {
        LambdaRat {
            num: IntPoly::zero(),
            den: IntPoly::one(),
        }
    }

    pub fn one() -> Self {
        LambdaRat {
            num: IntPoly::one(),
            den: IntPoly::one(),
        }
    }

    /// The field generator `L` itself.
    pub fn lambda() -> Self {
        LambdaRat {
            num: IntPoly::lambda(),
            den: IntPoly::one(),
        }
    }

    /// The recurring factor `1 - L`.
    pub fn one_minus_lambda() -> Self {
        LambdaRat {
            num: IntPoly::from_i64(&[1, -1]),
            den: IntPoly::one(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        LambdaRat {
            num: IntPoly::constant(BigInt::from(n)),
            den: IntPoly::one(),
        }
    }

    pub fn from_integer(n: BigInt) -> Self {
        LambdaRat {
            num: IntPoly::constant(n),
            den: IntPoly::one(),
        }
    }

    pub fn from_rational(r: &Rational) -> Self {
        LambdaRat::normalized(
            IntPoly::constant(r.numer().clone()),
            IntPoly::constant(r.denom().clone()),
        )
    }

    /// Convenience constructor from small integer coefficient slices.
    pub fn from_i64(num: &[i64], den: &[i64]) -> Self {
        LambdaRat::new(IntPoly::from_i64(num), IntPoly::from_i64(den)).expect("nonzero denominator")
    }

    pub fn num(&self) -> &IntPoly {
        &self.num
    }

    pub fn den(&self) -> &IntPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == IntPoly::one() && self.den == IntPoly::one()
    }

    /// Returns the value as a plain rational if it does not involve `L`.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.num.degree().unwrap_or(0) == 0 && self.den.degree() == Some(0) {
            Some(Rational::new(self.num.coeff(0), self.den.coeff(0)))
        } else {
            None
        }
    }

    pub fn div(&self, other: &LambdaRat) -> Result<LambdaRat> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(LambdaRat::normalized(
            self.num.mul(&other.den),
            self.den.mul(&other.num),
        ))
    }

    pub fn inv(&self) -> Result<LambdaRat> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(LambdaRat::normalized(self.den.clone(), self.num.clone()))
    }

    /// Exact `k`-th power; `pow(a, 0) = 1`, negative `k` inverts first.
    pub fn pow(&self, k: i64) -> Result<LambdaRat> {
        if k == 0 {
            return Ok(LambdaRat::one());
        }
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut exp = k.unsigned_abs();
        let mut acc = LambdaRat::one();
        let mut sq = base;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &sq;
            }
            exp >>= 1;
            if exp > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    /// Exact value at `L = v`; errors when `v` is a pole.
    pub fn eval(&self, v: &Rational) -> Result<Rational> {
        let d = self.den.eval(v);
        if d.is_zero() {
            return Err(Error::PoleAtEvaluation);
        }
        Ok(self.num.eval(v) / d)
    }
}

impl core::ops::Add for &LambdaRat {
    type Output = LambdaRat;
    fn add(self, rhs: &LambdaRat) -> LambdaRat {
        LambdaRat::normalized(
            self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den)),
            self.den.mul(&rhs.den),
        )
    }
}

impl core::ops::Sub for &LambdaRat {
    type Output = LambdaRat;
    fn sub(self, rhs: &LambdaRat) -> LambdaRat {
        LambdaRat::normalized(
            self.num.mul(&rhs.den).sub(&rhs.num.mul(&self.den)),
            self.den.mul(&rhs.den),
        )
    }
}

impl core::ops::Mul for &LambdaRat {
    type Output = LambdaRat;
    fn mul(self, rhs: &LambdaRat) -> LambdaRat {
        LambdaRat::normalized(self.num.mul(&rhs.num), self.den.mul(&rhs.den))
    }
}

impl core::ops::Neg for &LambdaRat {
    type Output = LambdaRat;
    fn neg(self) -> LambdaRat {
        LambdaRat {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
}

impl core::ops::Add for LambdaRat {
    type Output = LambdaRat;
    fn add(self, rhs: LambdaRat) -> LambdaRat {
        &self + &rhs
    }
}

impl core::ops::Sub for LambdaRat {
    type Output = LambdaRat;
    fn sub(self, rhs: LambdaRat) -> LambdaRat {
        &self - &rhs
    }
}

impl core::ops::Mul for LambdaRat {
    type Output = LambdaRat;
    fn mul(self, rhs: LambdaRat) -> LambdaRat {
        &self * &rhs
    }
}

impl core::ops::Neg for LambdaRat {
    type Output = LambdaRat;
    fn neg(self) -> LambdaRat {
        -&self
    }
}

/// Checks whether `p` is an exact `k`-th power `u^k` with `k >= 2`, using
/// gcd deflation with the derivative. Used only for pretty-printing
/// denominators such as `(L-1)^2`.
pub(crate) fn perfect_power(p: &IntPoly) -> Option<(IntPoly, u32)> {
    let deg = p.degree()?;
    if deg < 2 {
        return None;
    }
    let g = p.gcd(&p.derivative());
    let gdeg = g.degree()?;
    if gdeg == 0 {
        return None;
    }
    let base_deg = deg - gdeg;
    if base_deg == 0 || deg % base_deg != 0 {
        return None;
    }
    let k = (deg / base_deg) as u32;
    if k < 2 {
        return None;
    }
    // Candidate base: p / gcd(p, p'), up to content. Verify by powering.
    let base = p.div_unchecked(&g)?;
    let mut acc = IntPoly::one();
    for _ in 0..k {
        acc = acc.mul(&base);
    }
    if &acc == p {
        Some((base, k))
    } else {
        None
    }
}

impl IntPoly {
    /// Long division returning the quotient only when the division is exact.
    fn div_unchecked(&self, d: &IntPoly) -> Option<IntPoly> {
        if d.is_zero() || self.is_zero() {
            return None;
        }
        let dd = d.degree()?;
        let sd = self.degree()?;
        if sd < dd {
            return None;
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); sd - dd + 1];
        let lc = d.leading();
        for k in (0..quot.len()).rev() {
            let top = rem[k + dd].clone();
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(&lc);
            if !r.is_zero() {
                return None;
            }
            for (j, c) in d.coeffs.iter().enumerate() {
                rem[k + j] -= c * &q;
            }
            quot[k] = q;
        }
        if rem.iter().all(|c| c.is_zero()) {
            Some(IntPoly::from_coeffs(quot))
        } else {
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lam() -> LambdaRat {
        LambdaRat::lambda()
    }

    /// Long-division oracle over rationals, independent of gcd reduction.
    fn long_division(num: &IntPoly, den: &IntPoly) -> Option<Vec<Rational>> {
        let mut rem: Vec<Rational> = num
            .coeffs()
            .iter()
            .map(|c| Rational::from(c.clone()))
            .collect();
        let dd = den.degree()?;
        if num.degree()? < dd {
            return None;
        }
        let lc = Rational::from(den.leading());
        let qlen = num.degree()? - dd + 1;
        let mut quot = vec![Rational::zero(); qlen];
        for k in (0..qlen).rev() {
            let q = rem[k + dd].clone() / lc.clone();
            for (j, c) in den.coeffs().iter().enumerate() {
                let sub = Rational::from(c.clone()) * q.clone();
                rem[k + j] -= sub;
            }
            quot[k] = q;
        }
        if rem.iter().all(|c| c.is_zero()) {
            Some(quot)
        } else {
            None
        }
    }

    #[test]
    fn add_cancels() {
        let one_minus = LambdaRat::one_minus_lambda();
        assert_eq!(&lam() + &one_minus, LambdaRat::one());
    }

    #[test]
    fn div_matches_long_division_oracle() {
        // (L^2 - 1) / (L - 1) = L + 1
        let num = IntPoly::from_i64(&[-1, 0, 1]);
        let den = IntPoly::from_i64(&[-1, 1]);
        let quot = long_division(&num, &den).expect("exact division");
        assert_eq!(
            quot,
            vec![
                Rational::from(BigInt::from(1)),
                Rational::from(BigInt::from(1))
            ]
        );

        let a = LambdaRat::new(num, IntPoly::one()).unwrap();
        let b = LambdaRat::new(den, IntPoly::one()).unwrap();
        assert_eq!(a.div(&b).unwrap(), LambdaRat::from_i64(&[1, 1], &[1]));
    }

    #[test]
    fn mul_inverse_pair() {
        let a = LambdaRat::from_i64(&[1], &[1, -1]); // 1/(1-L)
        let b = LambdaRat::one_minus_lambda();
        assert_eq!(&a * &b, LambdaRat::one());
    }

    #[test]
    fn div_by_zero_is_error() {
        assert_eq!(lam().div(&LambdaRat::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn pow_by_repeated_multiplication() {
        let base = LambdaRat::one_minus_lambda();
        let mut acc = LambdaRat::one();
        for _ in 0..2 {
            acc = &acc * &base;
        }
        assert_eq!(base.pow(2).unwrap(), acc);
        assert_eq!(base.pow(2).unwrap(), LambdaRat::from_i64(&[1, -2, 1], &[1]));
        assert_eq!(lam().pow(0).unwrap(), LambdaRat::one());
        assert_eq!(
            base.pow(-1).unwrap(),
            LambdaRat::from_i64(&[1], &[1, -1]).pow(1).unwrap()
        );
        assert_eq!(LambdaRat::zero().pow(-1), Err(Error::DivisionByZero));
    }

    #[test]
    fn eval_examples() {
        let inv = LambdaRat::from_i64(&[1], &[1, -1]); // 1/(1-L)
        assert_eq!(inv.eval(&Rational::zero()).unwrap(), Rational::one());
        // (L+1)/(L-1)^2 at L=2 -> 3
        let r = LambdaRat::from_i64(&[1, 1], &[1, -2, 1]);
        assert_eq!(
            r.eval(&Rational::from(BigInt::from(2))).unwrap(),
            Rational::from(BigInt::from(3))
        );
        assert_eq!(inv.eval(&Rational::one()), Err(Error::PoleAtEvaluation));
    }

    #[test]
    fn canonical_sign_on_denominator() {
        // 1/(-1+L) == -1/(1-L); both normalize to den with positive lc.
        let a = LambdaRat::new(IntPoly::one(), IntPoly::from_i64(&[-1, 1])).unwrap();
        let b = LambdaRat::new(IntPoly::from_i64(&[-1]), IntPoly::from_i64(&[1, -1])).unwrap();
        assert_eq!(a, b);
        assert!(a.den().leading() > BigInt::zero());
    }

    #[test]
    fn reduction_includes_content() {
        let a = LambdaRat::new(IntPoly::from_i64(&[2, 2]), IntPoly::from_i64(&[4])).unwrap();
        assert_eq!(a, LambdaRat::from_i64(&[1, 1], &[2]));
    }

    #[test]
    fn perfect_power_detection() {
        let p = IntPoly::from_i64(&[1, -2, 1]); // (L-1)^2
        let (base, k) = perfect_power(&p).expect("is a square");
        assert_eq!(base, IntPoly::from_i64(&[-1, 1]));
        assert_eq!(k, 2);
        assert!(perfect_power(&IntPoly::from_i64(&[1, 1])).is_none());
        assert!(perfect_power(&IntPoly::from_i64(&[2, 3, 1])).is_none()); // (L+1)(L+2)
    }
}
