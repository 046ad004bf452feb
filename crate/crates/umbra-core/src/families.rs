//! Constructors for the concrete polynomial families and number sequences:
//! Frobenius-Euler and higher-order Bernoulli polynomials, Stirling numbers
//! of both kinds, Abel polynomials, Changhee polynomials of the second kind,
//! and the two associated families `t_n(x|L)` and `S_n(x|mu)`.
//!
//! Wherever the literature gives both a generating-function route and a
//! closed form, both are implemented; their agreement is part of the test
//! suite rather than assumed.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{falling_factorial, Poly};
use crate::scalar::{LambdaRat, Rational};
use crate::series::Series;
use crate::umbral::apply_op;

/// Default truncation guard added on top of the degree a computation needs.
pub const TRUNC_GUARD: usize = 2;

/// `n!` as a big integer.
pub fn factorial(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    acc
}

/// Binomial coefficient `C(n, k)`, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Multinomial coefficient `total! / (parts_1! ... parts_m!)`; the parts
/// must sum to `total`.
pub fn multinomial(total: u64, parts: &[u64]) -> BigInt {
    debug_assert_eq!(parts.iter().sum::<u64>(), total);
    let mut acc = factorial(total);
    for &p in parts {
        acc /= factorial(p);
    }
    acc
}

/// Falling factorial of an integer: `(n)_k = n(n-1)...(n-k+1)`.
pub fn falling_number(n: i64, k: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= BigInt::from(n) - BigInt::from(i);
    }
    acc
}

/// Integer power with the `0^0 = 1` convention used by the multiple sums.
pub fn int_pow(base: u64, exp: u64) -> BigInt {
    if exp == 0 {
        return BigInt::one();
    }
    BigInt::from(base).pow(exp as u32)
}

/// Stirling numbers of the second kind as a triangle: `row l`, entry `n`,
/// for `0 <= n <= l <= rows`, from `S2(l,n) = n S2(l-1,n) + S2(l-1,n-1)`.
pub fn stirling2_triangle(rows: u32) -> Vec<Vec<BigInt>> {
    let mut tri: Vec<Vec<BigInt>> = Vec::with_capacity(rows as usize + 1);
    tri.push(vec![BigInt::one()]);
    for l in 1..=rows as usize {
        let mut row = Vec::with_capacity(l + 1);
        row.push(BigInt::zero());
        for n in 1..=l {
            let keep = &tri[l - 1].get(n).cloned().unwrap_or_else(BigInt::zero) * BigInt::from(n);
            let split = tri[l - 1][n - 1].clone();
            row.push(keep + split);
        }
        tri.push(row);
    }
    tri
}

/// Signed Stirling numbers of the first kind as a triangle: `row n`,
/// entry `l`, from `S1(n+1,l) = S1(n,l-1) - n S1(n,l)`.
pub fn stirling1_triangle(rows: u32) -> Vec<Vec<BigInt>> {
    let mut tri: Vec<Vec<BigInt>> = Vec::with_capacity(rows as usize + 1);
    tri.push(vec![BigInt::one()]);
    for n in 1..=rows as usize {
        let mut row = Vec::with_capacity(n + 1);
        for l in 0..=n {
            let from_lower = if l > 0 {
                tri[n - 1][l - 1].clone()
            } else {
                BigInt::zero()
            };
            let scaled =
                tri[n - 1].get(l).cloned().unwrap_or_else(BigInt::zero) * BigInt::from(n - 1);
            row.push(from_lower - scaled);
        }
        tri.push(row);
    }
    tri
}

/// `S2(l, n)`, the number of partitions of an `l`-set into `n` blocks.
pub fn stirling2(l: u32, n: u32) -> BigInt {
    if n > l {
        return BigInt::zero();
    }
    stirling2_triangle(l)[l as usize][n as usize].clone()
}

/// Signed `S1(n, l)`: the coefficient of `x^l` in the falling factorial.
pub fn stirling1(n: u32, l: u32) -> BigInt {
    if l > n {
        return BigInt::zero();
    }
    stirling1_triangle(n)[n as usize][l as usize].clone()
}

/// The series `((1-L)/(e^t - L))^alpha` up to `trunc`. Invertible for every
/// integer `alpha` since the base has constant term 1.
pub fn frobenius_euler_series(alpha: i64, trunc: usize) -> Series {
    let lam = LambdaRat::lambda();
    let e = Series::exp_t(trunc);
    let e_minus_lambda = e
        .sub(&Series::monomial(lam, 0, trunc))
        .expect("same truncation");
    let base = e_minus_lambda
        .inverse()
        .expect("constant term 1 - L is nonzero in Q(L)")
        .scale(&LambdaRat::one_minus_lambda());
    base.pow(alpha).expect("invertible series")
}

/// The series `(t/(e^t - 1))^alpha` up to `trunc` (built one order higher
/// internally to absorb the order drop of the quotient).
pub fn bernoulli_series(alpha: i64, trunc: usize) -> Series {
    let e_minus_one = Series::exp_t(trunc + 1)
        .sub(&Series::one(trunc + 1))
        .expect("same truncation");
    let base = Series::t(trunc + 1)
        .delta_quotient(&e_minus_one)
        .expect("both are delta series");
    base.pow(alpha).expect("invertible series")
}

/// Frobenius-Euler polynomial `H_n^(alpha)(x|L)`, via the operator form
/// `((1-L)/(e^t-L))^alpha x^n`.
pub fn frobenius_euler(n: u32, alpha: i64) -> Poly {
    let op = frobenius_euler_series(alpha, n as usize + TRUNC_GUARD);
    apply_op(&op, &Poly::monomial(LambdaRat::one(), n as usize)).expect("truncation covers degree")
}

/// Frobenius-Euler number `H_n^(alpha)(L)`: the value of the polynomial at
/// `x = 0`.
pub fn frobenius_euler_number_order(n: u32, alpha: i64) -> LambdaRat {
    frobenius_euler(n, alpha).coeff(0)
}

/// Frobenius-Euler number `H_n(L)` by the Stirling-number formula
/// `H_n = sum_l (1/(L-1))^l l! S2(n,l)`.
pub fn frobenius_euler_number(n: u32) -> LambdaRat {
    let inv_lm1 = LambdaRat::from_i64(&[1], &[-1, 1]); // 1/(L-1)
    let tri = stirling2_triangle(n);
    let mut acc = LambdaRat::zero();
    for l in 0..=n {
        let s2 = &tri[n as usize][l as usize];
        if s2.is_zero() {
            continue;
        }
        let term = &LambdaRat::from_integer(s2 * factorial(l as u64))
            * &inv_lm1.pow(l as i64).expect("nonzero base");
        acc = &acc + &term;
    }
    acc
}

/// Higher-order Bernoulli polynomial `B_n^(alpha)(x) = (t/(e^t-1))^alpha x^n`.
pub fn bernoulli_higher(n: u32, alpha: i64) -> Poly {
    let op = bernoulli_series(alpha, n as usize + TRUNC_GUARD);
    apply_op(&op, &Poly::monomial(LambdaRat::one(), n as usize)).expect("truncation covers degree")
}

/// Higher-order Bernoulli number `B_n^(alpha) = B_n^(alpha)(0)`.
pub fn bernoulli_number(n: u32, alpha: i64) -> LambdaRat {
    bernoulli_higher(n, alpha).coeff(0)
}

/// Abel polynomial `A_n(x; b) = x (x - bn)^(n-1)` for `n >= 1`, `A_0 = 1`.
pub fn abel(n: u32, b: &Rational) -> Result<Poly> {
    if b.is_zero() {
        return Err(Error::BadParameter(String::from("abel requires b != 0")));
    }
    if n == 0 {
        return Ok(Poly::one());
    }
    let shift = -(b * Rational::from(BigInt::from(n)));
    let base =
        Poly::monomial(LambdaRat::one(), n as usize - 1).shift(&LambdaRat::from_rational(&shift));
    Ok(base.mul_x())
}

/// Changhee polynomial of the second kind, from the generating function
/// `(1+t)^x / (1 + L(1+t)) = sum C_n(x|L) t^n / n!`.
///
/// `(1+t)^x` is expanded as `sum (x)_k t^k / k!` with polynomial
/// coefficients, and multiplied against the inverse of the scalar series
/// `(1+L) + L t` as an explicit `n+1`-term convolution.
pub fn changhee2(n: u32) -> Poly {
    let n = n as usize;
    let lam = LambdaRat::lambda();
    let den = Series::from_coeffs(vec![&LambdaRat::one() + &lam, lam], n);
    let inv = den
        .inverse()
        .expect("constant term 1 + L is nonzero in Q(L)");
    let mut acc = Poly::zero();
    for k in 0..=n {
        let c = inv.coeff(n - k);
        if c.is_zero() {
            continue;
        }
        let kfact = LambdaRat::from_integer(factorial(k as u64));
        let w = c.div(&kfact).expect("factorial is nonzero");
        acc = &acc + &falling_factorial(k as u32).scale(&w);
    }
    let nfact = LambdaRat::from_integer(factorial(n as u64));
    acc.scale(&nfact)
}

/// The associated polynomial `t_n(x|L)` of `t/(1 + L(1+t))` by its closed
/// double-sum form.
pub fn t_poly(n: u32) -> Poly {
    if n == 0 {
        return Poly::one();
    }
    let n = n as u64;
    let lam = LambdaRat::lambda();
    let nm1_fact = factorial(n - 1);
    let mut coeffs = vec![LambdaRat::zero(); n as usize + 1];
    for a in 0..=n {
        let lam_a = lam.pow(a as i64).expect("nonzero base");
        let c_na = binomial(n, a);
        for b in 1..=n {
            // C(a, n-b) vanishes when n - b > a.
            let c_ab = binomial(a, n - b);
            if c_ab.is_zero() || c_na.is_zero() {
                continue;
            }
            let num = &c_na * &c_ab * &nm1_fact;
            let den = factorial(b - 1);
            let w = LambdaRat::from_rational(&Rational::new(num, den));
            coeffs[b as usize] = &coeffs[b as usize] + &(&w * &lam_a);
        }
    }
    Poly::from_coeffs(coeffs)
}

/// The associated polynomial `S_n(x|mu)` of `t/(1+t)^mu` by its closed form
/// `sum_k C(mu n, n-k) (n-1)!/(k-1)! x^k`; requires `mu >= 1`.
pub fn s_poly(n: u32, mu: u32) -> Result<Poly> {
    if mu == 0 {
        return Err(Error::BadParameter(String::from("s_poly requires mu >= 1")));
    }
    if n == 0 {
        return Ok(Poly::one());
    }
    let n = n as u64;
    let mut coeffs = vec![LambdaRat::zero(); n as usize + 1];
    for k in 1..=n {
        let num = binomial(mu as u64 * n, n - k) * factorial(n - 1);
        let den = factorial(k - 1);
        coeffs[k as usize] = LambdaRat::from_rational(&Rational::new(num, den));
    }
    Ok(Poly::from_coeffs(coeffs))
}

/// Number of weak compositions of `l` into `n` parts: `C(l+n-1, n-1)`.
pub fn compositions_count(l: u32, n: u32) -> BigInt {
    binomial(l as u64 + n as u64 - 1, n as u64 - 1)
}

/// Iterator over all `n`-tuples of nonnegative integers summing to `l`, in
/// lexicographic order, each exactly once.
pub fn weak_compositions(l: u32, n: u32) -> WeakCompositions {
    assert!(n >= 1, "weak compositions need at least one part");
    let mut first = vec![0u32; n as usize];
    first[n as usize - 1] = l;
    WeakCompositions { next: Some(first) }
}

pub struct WeakCompositions {
    next: Option<Vec<u32>>,
}

impl Iterator for WeakCompositions {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        let current = self.next.take()?;
        let n = current.len();
        // Find the rightmost index whose suffix still carries weight.
        let mut succ = None;
        let mut suffix: u32 = 0;
        for j in (0..n.saturating_sub(1)).rev() {
            suffix += current[j + 1];
            if suffix > 0 {
                succ = Some((j, suffix));
                break;
            }
        }
        if let Some((j, suffix)) = succ {
            let mut next = current.clone();
            next[j] += 1;
            for slot in next.iter_mut().skip(j + 1) {
                *slot = 0;
            }
            next[n - 1] = suffix - 1;
            self.next = Some(next);
        }
        Some(current)
    }
}

/// Which family a CLI request refers to; parameters travel separately.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Family {
    FrobeniusEuler,
    Bernoulli,
    Stirling1,
    Stirling2,
    Abel,
    Changhee2,
    TPoly,
    SPoly,
    FrobeniusEulerNumber,
    BernoulliNumber,
}

impl Family {
    pub fn parse(name: &str) -> Result<Family> {
        Ok(match name {
            "frobenius-euler" | "fe" => Family::FrobeniusEuler,
            "bernoulli" => Family::Bernoulli,
            "stirling1" => Family::Stirling1,
            "stirling2" => Family::Stirling2,
            "abel" => Family::Abel,
            "changhee2" => Family::Changhee2,
            "t-poly" => Family::TPoly,
            "s-poly" => Family::SPoly,
            "fe-number" | "fe-numbers" => Family::FrobeniusEulerNumber,
            "bernoulli-number" => Family::BernoulliNumber,
            other => {
                return Err(Error::BadParameter(alloc::format!(
                    "unknown family '{other}'"
                )))
            }
        })
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Family::FrobeniusEuler => "frobenius-euler",
            Family::Bernoulli => "bernoulli",
            Family::Stirling1 => "stirling1",
            Family::Stirling2 => "stirling2",
            Family::Abel => "abel",
            Family::Changhee2 => "changhee2",
            Family::TPoly => "t-poly",
            Family::SPoly => "s-poly",
            Family::FrobeniusEulerNumber => "fe-number",
            Family::BernoulliNumber => "bernoulli-number",
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::umbral::associated_by_inverse;

    fn int(n: i64) -> LambdaRat {
        LambdaRat::from_int(n)
    }

    fn rat(n: i64, d: i64) -> LambdaRat {
        LambdaRat::from_rational(&Rational::new(BigInt::from(n), BigInt::from(d)))
    }

    fn poly(coeffs: &[LambdaRat]) -> Poly {
        Poly::from_coeffs(coeffs.to_vec())
    }

    /// Brute-force set-partition counter: partitions of {0..l-1} into
    /// exactly n nonempty blocks, independent of the recurrence.
    fn count_partitions(l: u32, n: u32) -> u64 {
        fn go(remaining: u32, blocks: u32, target: u32) -> u64 {
            if remaining == 0 {
                return u64::from(blocks == target);
            }
            // Place the next element in an existing block or open a new one.
            let mut total = u64::from(blocks) * go(remaining - 1, blocks, target);
            if blocks < target {
                total += go(remaining - 1, blocks + 1, target);
            }
            total
        }
        go(l, 0, n)
    }

    #[test]
    fn stirling2_matches_partition_oracle() {
        assert_eq!(stirling2(3, 2), BigInt::from(3));
        assert_eq!(stirling2(4, 2), BigInt::from(7));
        assert_eq!(stirling2(2, 5), BigInt::zero());
        for l in 0..=6 {
            for n in 0..=6 {
                assert_eq!(
                    stirling2(l, n),
                    BigInt::from(count_partitions(l, n)),
                    "S2({l},{n})"
                );
            }
        }
    }

    #[test]
    fn stirling1_matches_falling_factorial_coefficients() {
        assert_eq!(stirling1(3, 2), BigInt::from(-3));
        assert_eq!(stirling1(4, 2), BigInt::from(11));
        for n in 0..=8u32 {
            let ff = falling_factorial(n);
            for l in 0..=n {
                let expected = ff.coeff(l as usize);
                assert_eq!(
                    LambdaRat::from_integer(stirling1(n, l)),
                    expected,
                    "S1({n},{l})"
                );
            }
            assert_eq!(stirling1(n, n), BigInt::one());
        }
    }

    #[test]
    fn frobenius_euler_small_cases() {
        assert_eq!(frobenius_euler(0, 1), Poly::one());
        // H_1^(1) = x + 1/(L-1)
        let expected = poly(&[LambdaRat::from_i64(&[1], &[-1, 1]), int(1)]);
        assert_eq!(frobenius_euler(1, 1), expected);
        // alpha = 0 gives the identity operator
        assert_eq!(frobenius_euler(2, 0), Poly::monomial(int(1), 2));
    }

    #[test]
    fn frobenius_euler_numbers_small() {
        assert_eq!(frobenius_euler_number(0), int(1));
        assert_eq!(
            frobenius_euler_number(1),
            LambdaRat::from_i64(&[1], &[-1, 1])
        );
        // H_2 = (L+1)/(L-1)^2
        assert_eq!(
            frobenius_euler_number(2),
            LambdaRat::from_i64(&[1, 1], &[1, -2, 1])
        );
    }

    #[test]
    fn bernoulli_small_cases() {
        assert_eq!(bernoulli_higher(1, 1), poly(&[rat(-1, 2), int(1)]));
        assert_eq!(bernoulli_number(2, 2), rat(5, 6));
        assert_eq!(bernoulli_higher(0, 7), Poly::one());
    }

    #[test]
    fn abel_cases() {
        assert_eq!(abel(0, &Rational::one()).unwrap(), Poly::one());
        let a2 = abel(2, &Rational::one()).unwrap();
        assert_eq!(a2, poly(&[int(0), int(-2), int(1)]));
        // A_3(x; 1/2) = x (x - 3/2)^2 = x^3 - 3x^2 + 9/4 x
        let half = Rational::new(BigInt::from(1), BigInt::from(2));
        assert_eq!(
            abel(3, &half).unwrap(),
            poly(&[int(0), rat(9, 4), int(-3), int(1)])
        );
        assert!(matches!(
            abel(2, &Rational::zero()),
            Err(Error::BadParameter(_))
        ));
    }

    #[test]
    fn changhee2_small_cases() {
        // C_0 = 1/(1+L)
        assert_eq!(
            changhee2(0),
            Poly::constant(LambdaRat::from_i64(&[1], &[1, 1]))
        );
        // C_1 = x/(1+L) - L/(1+L)^2
        let expected = poly(&[
            LambdaRat::from_i64(&[0, -1], &[1, 2, 1]),
            LambdaRat::from_i64(&[1], &[1, 1]),
        ]);
        assert_eq!(changhee2(1), expected);
    }

    #[test]
    fn changhee2_inverts_to_falling_factorial() {
        // (1 + L e^t) C_n(x|L) = (x)_n
        let lam = LambdaRat::lambda();
        for n in 0..=6u32 {
            let trunc = n as usize + TRUNC_GUARD;
            let op = Series::one(trunc)
                .add(&Series::exp_t(trunc).scale(&lam))
                .unwrap();
            let lhs = apply_op(&op, &changhee2(n)).unwrap();
            assert_eq!(lhs, falling_factorial(n), "n = {n}");
        }
    }

    #[test]
    fn t_poly_cases() {
        assert_eq!(t_poly(0), Poly::one());
        assert_eq!(
            t_poly(1),
            poly(&[int(0), LambdaRat::from_i64(&[1, 1], &[1])])
        );
        // dual path at n = 2
        let lam = LambdaRat::lambda();
        let trunc = 4;
        let den = Series::from_coeffs(vec![&LambdaRat::one() + &lam, lam], trunc);
        let f = Series::t(trunc).mul(&den.inverse().unwrap()).unwrap();
        let fam = associated_by_inverse(&f, 2).unwrap();
        assert_eq!(&t_poly(2), fam.poly(2));
    }

    #[test]
    fn s_poly_cases() {
        assert_eq!(s_poly(1, 1).unwrap(), Poly::x());
        assert_eq!(s_poly(1, 3).unwrap(), Poly::x());
        assert_eq!(s_poly(2, 1).unwrap(), poly(&[int(0), int(2), int(1)]));
        assert_eq!(s_poly(2, 2).unwrap(), poly(&[int(0), int(4), int(1)]));
        assert!(matches!(s_poly(2, 0), Err(Error::BadParameter(_))));
    }

    #[test]
    fn weak_composition_enumeration() {
        let all: Vec<Vec<u32>> = weak_compositions(0, 3).collect();
        assert_eq!(all, vec![vec![0, 0, 0]]);
        let all: Vec<Vec<u32>> = weak_compositions(2, 2).collect();
        assert_eq!(all, vec![vec![0, 2], vec![1, 1], vec![2, 0]]);
        let all: Vec<Vec<u32>> = weak_compositions(3, 3).collect();
        assert_eq!(all.len(), 10);
        assert_eq!(compositions_count(3, 3), BigInt::from(10));
        // lexicographic and duplicate-free
        for w in all.windows(2) {
            assert!(w[0] < w[1]);
        }
    }

    #[test]
    fn family_name_round_trip() {
        for name in [
            "frobenius-euler",
            "bernoulli",
            "stirling1",
            "stirling2",
            "abel",
            "changhee2",
            "t-poly",
            "s-poly",
            "fe-number",
            "bernoulli-number",
        ] {
            assert_eq!(Family::parse(name).unwrap().as_str(), name);
        }
        assert!(Family::parse("euler").is_err());
    }
}
