//! The umbral pairing, series acting as operators on polynomials, associated
//! sequences, and the transfer formula.
//!
//! A series `f = sum a_k t^k / k!` acts on polynomials two ways: as the
//! linear functional `<f | x^n> = a_n`, and as the operator
//! `f p(x) = sum_k (a_k / k!) p^(k)(x)` (so `t^k` is the k-th derivative and
//! `e^{yt}` is the shift by `y`). Associated sequences are produced from the
//! compositional inverse, and converted into each other by the transfer
//! formula `q_n = x (f/g)^n x^{-1} p_n`.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::families::factorial;
use crate::poly::Poly;
use crate::scalar::LambdaRat;
use crate::series::{Series, ShefferPair};

/// The pairing `<f(t) | p(x)> = sum_k k! * [t^k]f * [x^k]p`.
///
/// Errors when `f` is truncated below `deg p` (the needed coefficients of
/// `f` would be unknown).
pub fn pairing(f: &Series, p: &Poly) -> Result<LambdaRat> {
    let deg = match p.degree() {
        Some(d) => d,
        None => return Ok(LambdaRat::zero()),
    };
    if f.trunc() < deg {
        return Err(Error::TruncationMismatch);
    }
    let mut acc = LambdaRat::zero();
    for (k, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() || f.coeff(k).is_zero() {
            continue;
        }
        let kfact = LambdaRat::from_integer(factorial(k as u64));
        acc = &acc + &(&(f.coeff(k) * c) * &kfact);
    }
    Ok(acc)
}

/// Applies `f(t)` to `p(x)` as a differential operator:
/// `sum_k [t^k]f * p^(k)(x)`. `apply_op(e^{yt}, p) = p(x+y)`.
pub fn apply_op(f: &Series, p: &Poly) -> Result<Poly> {
    let deg = match p.degree() {
        Some(d) => d,
        None => return Ok(Poly::zero()),
    };
    if f.trunc() < deg {
        return Err(Error::TruncationMismatch);
    }
    let mut acc = Poly::zero();
    let mut dp = p.clone();
    for k in 0..=deg {
        if k > 0 {
            dp = dp.derivative(1);
        }
        if f.coeff(k).is_zero() {
            continue;
        }
        acc = &acc + &dp.scale(f.coeff(k));
    }
    Ok(acc)
}

/// The associated sequence `p_0 .. p_n` of a delta series `f`, read off the
/// powers of the compositional inverse.
#[derive(Clone, Debug)]
pub struct AssociatedFamily {
    f: Series,
    polys: Vec<Poly>,
}

impl AssociatedFamily {
    pub fn f(&self) -> &Series {
        &self.f
    }

    pub fn polys(&self) -> &[Poly] {
        &self.polys
    }

    pub fn poly(&self, k: usize) -> &Poly {
        &self.polys[k]
    }
}

/// Computes the associated sequence of `f` up to degree `n` from
/// `e^{x fbar(t)}`: the coefficient of `x^j` in `p_k` is
/// `(k!/j!) * [t^k] fbar(t)^j`, where `fbar` is the compositional inverse.
pub fn associated_by_inverse(f: &Series, n: usize) -> Result<AssociatedFamily> {
    if f.ord() != Some(1) {
        return Err(Error::NotDelta);
    }
    if f.trunc() < n {
        return Err(Error::TruncationMismatch);
    }
    let fbar = f.comp_inverse()?;
    // fbar^j for j = 0..n
    let mut power = Series::one(fbar.trunc());
    let mut powers = Vec::with_capacity(n + 1);
    powers.push(power.clone());
    for _ in 0..n {
        power = power.mul(&fbar)?;
        powers.push(power.clone());
    }
    let mut polys = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let kfact = factorial(k as u64);
        let mut coeffs = Vec::with_capacity(k + 1);
        for (j, po) in powers.iter().enumerate().take(k + 1) {
            let jfact = LambdaRat::from_integer(factorial(j as u64));
            let ratio = LambdaRat::from_integer(kfact.clone())
                .div(&jfact)
                .expect("factorial is nonzero");
            coeffs.push(&ratio * po.coeff(k));
        }
        polys.push(Poly::from_coeffs(coeffs));
    }
    Ok(AssociatedFamily {
        f: f.clone(),
        polys,
    })
}

/// The transfer formula: given the degree-`n` member `p_n` of the associated
/// sequence of `f`, returns the degree-`n` member of the associated sequence
/// of `g` as `x * (f/g)^n * x^{-1} p_n`.
pub fn transfer(f: &Series, g: &Series, p_n: &Poly, n: usize) -> Result<Poly> {
    if f.ord() != Some(1) || g.ord() != Some(1) {
        return Err(Error::NotDelta);
    }
    let ratio = f.delta_quotient(g)?;
    let ratio_n = ratio.pow(n as i64)?;
    let inner = p_n.divide_by_x()?;
    let applied = apply_op(&ratio_n, &inner)?;
    Ok(applied.mul_x())
}

/// Checks the biorthogonality `<f^k | p_n> = n! delta_{n,k}` for all
/// `0 <= n, k < polys.len()`.
///
/// The truncation of `f` must cover the largest degree present (asserted:
/// a violation is a programming error, not a data condition).
pub fn is_associated(f: &Series, polys: &[Poly]) -> bool {
    is_sheffer_impl(None, f, polys)
}

/// Checks `<g f^k | S_n> = n! delta_{n,k}` for a Sheffer pair.
pub fn is_sheffer(pair: &ShefferPair, polys: &[Poly]) -> bool {
    is_sheffer_impl(Some(pair.g()), pair.f(), polys)
}

fn is_sheffer_impl(g: Option<&Series>, f: &Series, polys: &[Poly]) -> bool {
    if polys.is_empty() {
        return true;
    }
    let max_deg = polys
        .iter()
        .map(|p| p.degree().unwrap_or(0))
        .max()
        .unwrap_or(0);
    assert!(
        f.trunc() >= max_deg,
        "series truncation {} does not cover degree {}",
        f.trunc(),
        max_deg
    );
    let mut fk = match g {
        Some(g) => g.clone(),
        None => Series::one(f.trunc()),
    };
    for k in 0..polys.len() {
        if k > 0 {
            fk = fk.mul(f).expect("truncations match");
        }
        for (n, p) in polys.iter().enumerate() {
            let expected = if n == k {
                LambdaRat::from_integer(factorial(n as u64))
            } else {
                LambdaRat::zero()
            };
            match pairing(&fk, p) {
                Ok(v) if v == expected => {}
                _ => return false,
            }
        }
    }
    true
}
