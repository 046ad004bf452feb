//! Polynomials in `x` over the scalar field Q(L).
//!
//! This is the polynomial space the umbral machinery acts on; every concrete
//! family (Frobenius-Euler, Bernoulli, Abel, ...) is a [`Poly`]. Storage is
//! dense, index = degree, with trailing zeros stripped so the zero polynomial
//! is the empty coefficient vector and equality is coefficient-wise.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::families::binomial;
use crate::scalar::{LambdaRat, Rational};

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Poly {
    coeffs: Vec<LambdaRat>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(LambdaRat::one())
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Poly::monomial(LambdaRat::one(), 1)
    }

    pub fn constant(c: LambdaRat) -> Self {
        Poly::from_coeffs(vec![c])
    }

    /// `c * x^k`.
    pub fn monomial(c: LambdaRat, k: usize) -> Self {
        let mut coeffs = vec![LambdaRat::zero(); k + 1];
        coeffs[k] = c;
        Poly::from_coeffs(coeffs)
    }

    /// Builds from low-to-high coefficients, trimming trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<LambdaRat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree in `x`; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[LambdaRat] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> LambdaRat {
        self.coeffs.get(k).cloned().unwrap_or_else(LambdaRat::zero)
    }

    pub fn scale(&self, c: &LambdaRat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiplication by `x` (degree shift).
    pub fn mul_x(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(LambdaRat::zero());
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    /// `p(x + c)`, by binomial expansion of each monomial.
    pub fn shift(&self, c: &LambdaRat) -> Poly {
        if c.is_zero() || self.is_zero() {
            return self.clone();
        }
        let deg = self.degree().unwrap();
        let mut out = vec![LambdaRat::zero(); deg + 1];
        // Powers of c up to deg.
        let mut c_pows = Vec::with_capacity(deg + 1);
        c_pows.push(LambdaRat::one());
        for _ in 0..deg {
            c_pows.push(c_pows.last().unwrap() * c);
        }
        for (k, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for j in 0..=k {
                let b = LambdaRat::from_integer(binomial(k as u64, j as u64));
                out[j] = &out[j] + &(&(a * &b) * &c_pows[k - j]);
            }
        }
        Poly::from_coeffs(out)
    }

    /// `k`-th derivative with respect to `x`.
    pub fn derivative(&self, k: u32) -> Poly {
        let mut p = self.clone();
        for _ in 0..k {
            if p.coeffs.len() <= 1 {
                return Poly::zero();
            }
            p = Poly::from_coeffs(
                p.coeffs[1..]
                    .iter()
                    .enumerate()
                    .map(|(i, c)| c * &LambdaRat::from_int(i as i64 + 1))
                    .collect(),
            );
        }
        p
    }

    /// The quotient `q` with `x*q = self`; errors when the constant term is
    /// nonzero (the transfer-formula precondition `p_n(0) = 0` failed).
    pub fn divide_by_x(&self) -> Result<Poly> {
        if self.is_zero() {
            return Ok(Poly::zero());
        }
        if !self.coeffs[0].is_zero() {
            return Err(Error::ConstantTermNonzero);
        }
        Ok(Poly {
            coeffs: self.coeffs[1..].to_vec(),
        })
    }

    /// Exact Horner evaluation at `x = v` in Q(L).
    pub fn eval(&self, v: &LambdaRat) -> LambdaRat {
        let mut acc = LambdaRat::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * v) + c;
        }
        acc
    }

    /// Specializes `L` to a rational point and then evaluates at `x`,
    /// exactly. Errors when any coefficient has a pole at `lambda`.
    pub fn eval_at(&self, lambda: &Rational, x: &Rational) -> Result<Rational> {
        use num_traits::Zero;
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c.eval(lambda)?;
        }
        Ok(acc)
    }
}

impl core::ops::Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(&self.coeff(k) + &rhs.coeff(k));
        }
        Poly::from_coeffs(out)
    }
}

impl core::ops::Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(&self.coeff(k) - &rhs.coeff(k));
        }
        Poly::from_coeffs(out)
    }
}

impl core::ops::Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![LambdaRat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Poly::from_coeffs(out)
    }
}

impl core::ops::Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

/// The falling factorial `(x)_n = x(x-1)...(x-n+1)`, with `(x)_0 = 1`.
pub fn falling_factorial(n: u32) -> Poly {
    let mut acc = Poly::one();
    for i in 0..n {
        let factor = Poly::from_coeffs(vec![
            LambdaRat::from_integer(-BigInt::from(i)),
            LambdaRat::one(),
        ]);
        acc = &acc * &factor;
    }
    acc
}
