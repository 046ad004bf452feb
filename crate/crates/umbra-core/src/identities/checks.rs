//! Construction of both sides of each registry identity as exact objects
//! in Q(L)[x].
//!
//! Conventions shared by all builders: `H_n^(a)` comes from the operator
//! route in `families`, and every scalar weight is assembled in Q before
//! entering Q(L) so that integer divisions such as `C(l,k)/C(k+n,n)` stay
//! exact.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::families::{
    bernoulli_higher, bernoulli_number, binomial, changhee2, compositions_count, factorial,
    falling_number, frobenius_euler, frobenius_euler_number, frobenius_euler_number_order,
    frobenius_euler_series, int_pow, multinomial, s_poly, stirling1, stirling2_triangle, t_poly,
    weak_compositions,
};
use crate::identities::{Grid, IdentityId, Instance, Sides};
use crate::poly::{falling_factorial, Poly};
use crate::scalar::{LambdaRat, Rational};
use crate::series::Series;
use crate::umbral::{apply_op, associated_by_inverse, pairing, transfer};

fn nonneg(inst: &Instance, name: &'static str) -> Result<u32> {
    let raw = inst.int(name)?;
    u32::try_from(raw)
        .map_err(|_| Error::BadParameter(alloc::format!("{name} = {raw} is out of range")))
}

pub(super) fn build_sides(id: IdentityId, inst: &Instance, grid: &Grid) -> Result<Sides> {
    match id {
        IdentityId::T1 => t1(nonneg(inst, "n")?, nonneg(inst, "a")?),
        IdentityId::T2 => t2(nonneg(inst, "n")?, nonneg(inst, "a")?),
        IdentityId::T3 => t3(nonneg(inst, "n")?, nonneg(inst, "a")?),
        IdentityId::T4 => t4(nonneg(inst, "n")?, nonneg(inst, "l")?),
        IdentityId::T5 => t5(nonneg(inst, "n")?, nonneg(inst, "a")?),
        IdentityId::T6 => t6(nonneg(inst, "n")?, nonneg(inst, "a")?, nonneg(inst, "p")?),
        IdentityId::T8 => t8(nonneg(inst, "n")?, grid.t8_extra),
        IdentityId::T9 => t9(nonneg(inst, "n")?, nonneg(inst, "a")?, &inst.rat("b")?),
        IdentityId::T10 => t10(
            nonneg(inst, "n")?,
            nonneg(inst, "mu")?,
            nonneg(inst, "k")?,
            grid.comp_cap,
        ),
        IdentityId::E15 => e15(nonneg(inst, "n")?, nonneg(inst, "k")?, grid.guard),
        IdentityId::E16 => e16(
            nonneg(inst, "a")?,
            nonneg(inst, "n")?,
            nonneg(inst, "k")?,
            grid.guard,
        ),
        IdentityId::E19 => e19(nonneg(inst, "n")?, nonneg(inst, "a")?, grid.guard),
        IdentityId::E41 => e41(nonneg(inst, "n")?, grid.guard),
        IdentityId::E43 => e43(nonneg(inst, "n")?),
        IdentityId::E45 => e45(nonneg(inst, "n")?, grid.guard),
        IdentityId::E47 => e47(nonneg(inst, "n")?, nonneg(inst, "mu")?, grid.guard),
        IdentityId::E51 => e51(nonneg(inst, "n")?),
        IdentityId::E53 => e53(nonneg(inst, "n")?, grid.guard),
        IdentityId::EFinal => e_final(nonneg(inst, "n")?, grid.comp_cap),
    }
}

fn xpow(n: u32) -> Poly {
    Poly::monomial(LambdaRat::one(), n as usize)
}

fn int_shift(p: &Poly, l: u32) -> Poly {
    p.shift(&LambdaRat::from_int(l as i64))
}

fn binom_lr(n: u64, k: u64) -> LambdaRat {
    LambdaRat::from_integer(binomial(n, k))
}

fn rational_lr(num: BigInt, den: BigInt) -> LambdaRat {
    LambdaRat::from_rational(&Rational::new(num, den))
}

fn neg_lambda_pow(k: i64) -> LambdaRat {
    (-&LambdaRat::lambda()).pow(k).expect("-L is nonzero")
}

fn one_minus_lambda_pow(k: i64) -> LambdaRat {
    LambdaRat::one_minus_lambda()
        .pow(k)
        .expect("1-L is nonzero in Q(L)")
}

/// H_{n-1}^{(n)}(x|L) equals the (a-1)n-fold binomial average of
/// H_{n-1}^{(an)} at shifted arguments.
fn t1(n: u32, a: u32) -> Result<Sides> {
    let lhs = frobenius_euler(n - 1, n as i64);
    let m = (a - 1) * n;
    let h = frobenius_euler(n - 1, (a * n) as i64);
    let mut sum = Poly::zero();
    for l in 0..=m {
        let w = &binom_lr(m as u64, l as u64) * &neg_lambda_pow((m - l) as i64);
        sum = &sum + &int_shift(&h, l).scale(&w);
    }
    let rhs = sum.scale(&one_minus_lambda_pow(-(m as i64)));
    Ok(Sides::Poly { lhs, rhs })
}

/// The (-L)-weighted power sum against (x+l)^{n-1} equals the normalized
/// (a+1)n-fold binomial average of H_{n-1}^{(n)}.
fn t2(n: u32, a: u32) -> Result<Sides> {
    let an = a * n;
    let xn1 = xpow(n - 1);
    let mut lhs = Poly::zero();
    for l in 0..=an {
        let w = &binom_lr(an as u64, l as u64) * &neg_lambda_pow(-(l as i64));
        lhs = &lhs + &int_shift(&xn1, l).scale(&w);
    }
    let m = (a + 1) * n;
    let h = frobenius_euler(n - 1, n as i64);
    let mut sum = Poly::zero();
    for l in 0..=m {
        let w = &binom_lr(m as u64, l as u64) * &neg_lambda_pow(n as i64 - l as i64);
        sum = &sum + &int_shift(&h, l).scale(&w);
    }
    let rhs = sum.scale(&one_minus_lambda_pow(-(n as i64)));
    Ok(Sides::Poly { lhs, rhs })
}

/// H_{n-1}^{(an)}(x+1|L) expanded through Stirling numbers of both kinds.
fn t3(n: u32, a: u32) -> Result<Sides> {
    let an = (a * n) as i64;
    let lhs = int_shift(&frobenius_euler(n - 1, an), 1);
    let tri2 = stirling2_triangle(2 * n - 1);
    let mut h_cache: Vec<Poly> = Vec::with_capacity(n as usize);
    for j in 0..n {
        h_cache.push(frobenius_euler(j, an));
    }
    let mut rhs = Poly::zero();
    for l in 0..n {
        let s1 = stirling1(n - 1, l);
        if s1.is_zero() {
            continue;
        }
        for k in 0..=l {
            let s2 = &tri2[(k + n) as usize][n as usize];
            if s2.is_zero() {
                continue;
            }
            let num = &s1 * s2 * binomial(l as u64, k as u64);
            let den = binomial((k + n) as u64, n as u64);
            rhs = &rhs + &h_cache[(l - k) as usize].scale(&rational_lr(num, den));
        }
    }
    Ok(Sides::Poly { lhs, rhs })
}

/// S1(n, l+1) = C(n-1, l) B_{n-1-l}^{(n)}.
fn t4(n: u32, l: u32) -> Result<Sides> {
    let lhs = LambdaRat::from_integer(stirling1(n, l + 1));
    let rhs = &LambdaRat::from_integer(binomial(n as u64 - 1, l as u64))
        * &bernoulli_number(n - 1 - l, n as i64);
    Ok(Sides::Scalar { lhs, rhs })
}

/// The normalized binomial average of H_{n-1}^{(an)}(x+l) equals the double
/// Stirling sum in powers of (x-1).
fn t5(n: u32, a: u32) -> Result<Sides> {
    let an = a * n;
    let h = frobenius_euler(n - 1, an as i64);
    let mut sum = Poly::zero();
    for l in 0..=an {
        let w = &binom_lr(an as u64, l as u64) * &neg_lambda_pow((an - l) as i64);
        sum = &sum + &int_shift(&h, l).scale(&w);
    }
    let lhs = sum.scale(&one_minus_lambda_pow(-(an as i64)));

    let tri2 = stirling2_triangle(2 * n - 1);
    let minus_one = LambdaRat::from_int(-1);
    let mut rhs = Poly::zero();
    for l in 0..n {
        let s1 = stirling1(n - 1, l);
        if s1.is_zero() {
            continue;
        }
        for k in 0..=l {
            let s2 = &tri2[(k + n) as usize][n as usize];
            if s2.is_zero() {
                continue;
            }
            let num = &s1 * s2 * binomial(l as u64, k as u64);
            let den = binomial((k + n) as u64, n as u64);
            let base = xpow(l - k).shift(&minus_one);
            rhs = &rhs + &base.scale(&rational_lr(num, den));
        }
    }
    Ok(Sides::Poly { lhs, rhs })
}

/// S1(n, p+1) as the quadruple sum over Frobenius-Euler and Bernoulli
/// numbers.
fn t6(n: u32, a: u32, p: u32) -> Result<Sides> {
    let an = a * n;
    let lhs = LambdaRat::from_integer(stirling1(n, p + 1));
    let mut h_num: Vec<LambdaRat> = Vec::with_capacity(n as usize);
    let mut b_num: Vec<LambdaRat> = Vec::with_capacity(n as usize);
    for j in 0..n {
        h_num.push(frobenius_euler_number_order(j, an as i64));
        b_num.push(bernoulli_number(j, n as i64));
    }
    let mut acc = LambdaRat::zero();
    for k in 0..=an {
        let neg_l = neg_lambda_pow((an - k) as i64);
        let c_ank = binomial(an as u64, k as u64);
        for l in p..n {
            let kpow = int_pow(k as u64, (n - 1 - l) as u64);
            if kpow.is_zero() {
                continue;
            }
            for m in p..=l {
                let ints = &c_ank
                    * binomial(n as u64 - 1, l as u64)
                    * binomial(l as u64, m as u64)
                    * binomial(m as u64, p as u64)
                    * &kpow;
                if ints.is_zero() {
                    continue;
                }
                let term = &(&(&LambdaRat::from_integer(ints) * &neg_l) * &h_num[(l - m) as usize])
                    * &b_num[(m - p) as usize];
                acc = &acc + &term;
            }
        }
    }
    let rhs = &acc * &one_minus_lambda_pow(-(an as i64));
    Ok(Sides::Scalar { lhs, rhs })
}

/// The double-sum expansion of e^{-xt}(e^t - L)^n, compared order by order
/// as a series with polynomial coefficients.
fn t8(n: u32, t8_extra: usize) -> Result<Sides> {
    let order = n as usize + t8_extra;
    // LHS: product of e^{-xt} (polynomial coefficients) and (e^t - L)^n.
    let e_minus_lam = Series::exp_t(order)
        .sub(&Series::monomial(LambdaRat::lambda(), 0, order))?
        .pow(n as i64)?;
    let mut lhs = Vec::with_capacity(order + 1);
    for m in 0..=order {
        let mut acc = Poly::zero();
        for i in 0..=m {
            let s = e_minus_lam.coeff(m - i);
            if s.is_zero() {
                continue;
            }
            let sign = if i % 2 == 0 {
                BigInt::from(1)
            } else {
                BigInt::from(-1)
            };
            let w = &rational_lr(sign, factorial(i as u64)) * s;
            acc = &acc + &Poly::monomial(w, i);
        }
        lhs.push(acc);
    }
    // RHS: for each l <= n and k = m - l, the inner j-sum in powers of x.
    let tri2 = stirling2_triangle(order as u32);
    let mut rhs = vec![Poly::zero(); order + 1];
    for l in 0..=n.min(order as u32) as usize {
        let outer = &binom_lr(n as u64, l as u64) * &one_minus_lambda_pow(n as i64 - l as i64);
        for k in 0..=(order - l) {
            let m = k + l;
            let inv_kfact = rational_lr(BigInt::from(1), factorial(k as u64));
            let mut inner = Poly::zero();
            for j in 0..=k {
                let s2 = &tri2[j + l][l];
                if s2.is_zero() {
                    continue;
                }
                let sign = if (k - j) % 2 == 0 {
                    BigInt::from(1)
                } else {
                    BigInt::from(-1)
                };
                let num = binomial(k as u64, j as u64) * s2 * sign;
                let den = binomial((j + l) as u64, l as u64);
                inner = &inner + &Poly::monomial(rational_lr(num, den), k - j);
            }
            let weighted = inner.scale(&(&outer * &inv_kfact));
            rhs[m] = &rhs[m] + &weighted;
        }
    }
    Ok(Sides::PolySeries { lhs, rhs })
}

/// (x - bn)^{n-1} as the triple sum over H_{n-1-l-k}^{(an)}.
fn t9(n: u32, a: u32, b: &Rational) -> Result<Sides> {
    let an = a * n;
    let nb = b * Rational::from(BigInt::from(n));
    let lhs = xpow(n - 1).shift(&LambdaRat::from_rational(&-nb.clone()));

    let tri2 = stirling2_triangle(n - 1);
    let mut h_cache: Vec<Poly> = Vec::with_capacity(n as usize);
    for j in 0..n {
        h_cache.push(frobenius_euler(j, an as i64));
    }
    let mut rhs = Poly::zero();
    for l in 0..=an.min(n - 1) {
        let inv_pow = one_minus_lambda_pow(-(l as i64));
        let c_anl = binomial(an as u64, l as u64);
        if c_anl.is_zero() {
            continue;
        }
        for k in 0..=(n - 1 - l) {
            let fall = falling_number(n as i64 - 1, (k + l) as u64);
            if fall.is_zero() {
                continue;
            }
            for j in 0..=k {
                let s2 = &tri2[(j + l) as usize][l as usize];
                if s2.is_zero() {
                    continue;
                }
                let num = &c_anl * binomial(k as u64, j as u64) * &fall * s2;
                let den = factorial(k as u64) * binomial((j + l) as u64, l as u64);
                let sign = if (k - j) % 2 == 0 { 1 } else { -1 };
                let nb_pow = Rational::from(BigInt::from(sign)) * nb.clone().pow((k - j) as i32);
                let w = &(&rational_lr(num, den) * &LambdaRat::from_rational(&nb_pow)) * &inv_pow;
                rhs = &rhs + &h_cache[(n - 1 - l - k) as usize].scale(&w);
            }
        }
    }
    Ok(Sides::Poly { lhs, rhs })
}

/// The Changhee-convolution expression for C(mu n, n-k)/(k-1)!; all the
/// symbolic L-dependence must cancel.
fn t10(n: u32, mu: u32, k: u32, comp_cap: u64) -> Result<Sides> {
    let lhs = rational_lr(
        binomial((mu * n) as u64, (n - k) as u64),
        factorial(k as u64 - 1),
    );
    // C_j(mu|L) for j = 0..n-k
    let mu_val = LambdaRat::from_int(mu as i64);
    let mut chg: Vec<LambdaRat> = Vec::with_capacity((n - k + 1) as usize);
    for j in 0..=(n - k) {
        chg.push(changhee2(j).eval(&mu_val));
    }
    let lam = LambdaRat::lambda();
    let mut rhs = LambdaRat::zero();
    for a in 0..=n {
        let lam_a = lam.pow(a as i64).expect("nonzero base");
        let c_na = binomial(n as u64, a as u64);
        if c_na.is_zero() {
            continue;
        }
        for b in k..=n {
            let c_ab = binomial(a as u64, (n - b) as u64);
            if c_ab.is_zero() {
                continue;
            }
            let l_total = b - k;
            if compositions_count(l_total, n) > BigInt::from(comp_cap) {
                return Err(Error::RangeTooLarge);
            }
            let mut comp_sum = LambdaRat::zero();
            for parts in weak_compositions(l_total, n) {
                let mult = multinomial(
                    l_total as u64,
                    &parts.iter().map(|&p| p as u64).collect::<Vec<u64>>(),
                );
                let mut prod = LambdaRat::from_integer(mult);
                for &li in &parts {
                    prod = &prod * &chg[li as usize];
                }
                comp_sum = &comp_sum + &prod;
            }
            let num = &c_na * &c_ab * binomial(b as u64 - 1, k as u64 - 1);
            let den = factorial(b as u64 - 1);
            let w = &rational_lr(num, den) * &lam_a;
            rhs = &rhs + &(&w * &comp_sum);
        }
    }
    Ok(Sides::Scalar { lhs, rhs })
}

/// Structural check: x H_{n-1}^{(n)}(x|L)/(1-L)^n is biorthogonal to powers
/// of f = t(e^t - L).
fn e15(n: u32, k: u32, guard: usize) -> Result<Sides> {
    let trunc = n as usize + guard;
    let e_minus_lam = Series::exp_t(trunc).sub(&Series::monomial(LambdaRat::lambda(), 0, trunc))?;
    let f = Series::t(trunc).mul(&e_minus_lam)?;
    let p_n = if n == 0 {
        Poly::one()
    } else {
        frobenius_euler(n - 1, n as i64)
            .mul_x()
            .scale(&one_minus_lambda_pow(-(n as i64)))
    };
    biorthogonality_sides(&f, &p_n, n, k)
}

/// Structural check: x H_{n-1}^{(an)}(x|L) is biorthogonal to powers of
/// f = t ((e^t - L)/(1 - L))^a.
fn e16(a: u32, n: u32, k: u32, guard: usize) -> Result<Sides> {
    let trunc = n as usize + guard;
    let f = Series::t(trunc).mul(&frobenius_euler_series(-(a as i64), trunc))?;
    let p_n = if n == 0 {
        Poly::one()
    } else {
        frobenius_euler(n - 1, (a * n) as i64).mul_x()
    };
    biorthogonality_sides(&f, &p_n, n, k)
}

fn biorthogonality_sides(f: &Series, p_n: &Poly, n: u32, k: u32) -> Result<Sides> {
    let lhs = pairing(&f.pow(k as i64)?, p_n)?;
    let rhs = if n == k {
        LambdaRat::from_integer(factorial(n as u64))
    } else {
        LambdaRat::zero()
    };
    Ok(Sides::Scalar { lhs, rhs })
}

/// The closed form of the associated sequence of ((1-L)/(e^t-L))^a t,
/// against the compositional-inverse construction.
fn e19(n: u32, a: u32, guard: usize) -> Result<Sides> {
    let trunc = n as usize + guard;
    let f = Series::t(trunc).mul(&frobenius_euler_series(a as i64, trunc))?;
    let lhs = associated_by_inverse(&f, n as usize)?
        .poly(n as usize)
        .clone();
    let an = a * n;
    let xn1 = xpow(n - 1);
    let mut sum = Poly::zero();
    for l in 0..=an {
        let w = &binom_lr(an as u64, l as u64) * &neg_lambda_pow((an - l) as i64);
        sum = &sum + &int_shift(&xn1, l).scale(&w);
    }
    let rhs = sum.scale(&one_minus_lambda_pow(-(an as i64))).mul_x();
    Ok(Sides::Poly { lhs, rhs })
}

/// (1 + L e^t) C_n(x|L) = (x)_n.
fn e41(n: u32, guard: usize) -> Result<Sides> {
    let trunc = n as usize + guard;
    let op = Series::one(trunc).add(&Series::exp_t(trunc).scale(&LambdaRat::lambda()))?;
    let lhs = apply_op(&op, &changhee2(n))?;
    Ok(Sides::Poly {
        lhs,
        rhs: falling_factorial(n),
    })
}

/// Probe: the finite geometric expansion of 1/(L e^t + 1) applied to
/// x B_{n-1}^{(n)}(x), versus the generating-function C_n(x|L). The sides are
/// ordered claimed-expansion first so a failure witnesses
/// `sum - C_n`.
fn e43(n: u32) -> Result<Sides> {
    let b = bernoulli_higher(n - 1, n as i64);
    let mut claimed = Poly::zero();
    for l in 0..=n {
        let x_plus_l = Poly::from_coeffs(vec![LambdaRat::from_int(l as i64), LambdaRat::one()]);
        let term = &int_shift(&b, l) * &x_plus_l;
        claimed = &claimed + &term.scale(&neg_lambda_pow(l as i64));
    }
    Ok(Sides::Poly {
        lhs: claimed,
        rhs: changhee2(n),
    })
}

/// t_n(x|L) closed form versus the associated sequence of t/(1 + L(1+t)).
fn e45(n: u32, guard: usize) -> Result<Sides> {
    let trunc = n as usize + guard;
    let lam = LambdaRat::lambda();
    let den = Series::from_coeffs(vec![&LambdaRat::one() + &lam, lam], trunc);
    let f = Series::t(trunc).mul(&den.inverse()?)?;
    let rhs = associated_by_inverse(&f, n as usize)?
        .poly(n as usize)
        .clone();
    Ok(Sides::Poly {
        lhs: t_poly(n),
        rhs,
    })
}

/// S_n(x|mu) closed form versus the associated sequence of t/(1+t)^mu.
fn e47(n: u32, mu: u32, guard: usize) -> Result<Sides> {
    let trunc = n as usize + guard;
    let one_plus_t = Series::from_coeffs(vec![LambdaRat::one(), LambdaRat::one()], trunc);
    let f = Series::t(trunc).mul(&one_plus_t.pow(-(mu as i64))?)?;
    let rhs = associated_by_inverse(&f, n as usize)?
        .poly(n as usize)
        .clone();
    Ok(Sides::Poly {
        lhs: s_poly(n, mu)?,
        rhs,
    })
}

/// Frobenius-Euler numbers: Stirling formula versus generating-function
/// expansion.
fn e51(n: u32) -> Result<Sides> {
    let lhs = frobenius_euler_number(n);
    let rhs = frobenius_euler_series(1, n as usize).coeff_fact(n as usize)?;
    Ok(Sides::Scalar { lhs, rhs })
}

/// The transfer of x^n to f = ((1-L)/(e^t-L)) t against its closed binomial
/// form.
fn e53(n: u32, guard: usize) -> Result<Sides> {
    let trunc = n as usize + guard;
    let f = Series::t(trunc).mul(&frobenius_euler_series(1, trunc))?;
    let lhs = transfer(&Series::t(trunc), &f, &xpow(n), n as usize)?;
    let xn1 = xpow(n - 1);
    let mut sum = Poly::zero();
    for k in 0..=n {
        let w = &binom_lr(n as u64, k as u64) * &neg_lambda_pow((n - k) as i64);
        sum = &sum + &int_shift(&xn1, k).scale(&w);
    }
    let rhs = sum.scale(&one_minus_lambda_pow(-(n as i64))).mul_x();
    Ok(Sides::Poly { lhs, rhs })
}

/// The closing identity: x^{n-1} reconstructed from products of
/// Frobenius-Euler numbers over weak compositions.
fn e_final(n: u32, comp_cap: u64) -> Result<Sides> {
    let lhs = xpow(n - 1);
    let mut h_num: Vec<LambdaRat> = Vec::with_capacity(n as usize);
    for j in 0..n {
        h_num.push(frobenius_euler_number(j));
    }
    // Composition sums per total l, shared across the k-sum.
    let mut comp_sums: Vec<LambdaRat> = Vec::with_capacity(n as usize);
    for l in 0..n {
        if compositions_count(l, n) > BigInt::from(comp_cap) {
            return Err(Error::RangeTooLarge);
        }
        let mut acc = LambdaRat::zero();
        for parts in weak_compositions(l, n) {
            let mult = multinomial(
                l as u64,
                &parts.iter().map(|&p| p as u64).collect::<Vec<u64>>(),
            );
            let mut prod = LambdaRat::from_integer(mult);
            for &li in &parts {
                prod = &prod * &h_num[li as usize];
            }
            acc = &acc + &prod;
        }
        comp_sums.push(acc);
    }
    let mut rhs = Poly::zero();
    for k in 0..=n {
        let w_k = &binom_lr(n as u64, k as u64) * &neg_lambda_pow((n - k) as i64);
        for l in 0..n {
            let w = &(&w_k * &binom_lr(n as u64 - 1, l as u64)) * &comp_sums[l as usize];
            rhs = &rhs + &int_shift(&xpow(n - 1 - l), k).scale(&w);
        }
    }
    let rhs = rhs.scale(&one_minus_lambda_pow(-(n as i64)));
    Ok(Sides::Poly { lhs, rhs })
}
