//! Exact umbral calculus over the rational function field Q(L).
//!
//! Everything in this crate is computed symbolically: scalars are reduced
//! ratios of integer polynomials in the formal parameter `L` (printed as `L`,
//! thought of as lambda), polynomials in `x` carry those scalars as
//! coefficients, and formal power series in `t` are truncated at an explicit
//! order that every operation respects. On top of that sit the umbral pairing
//! `<f(t) | p(x)>`, associated/Sheffer sequence machinery with the transfer
//! formula, constructors for the classical polynomial families
//! (Frobenius-Euler, higher-order Bernoulli, Abel, Changhee of the second
//! kind, and friends), and a registry of identities between them that are
//! checked as exact polynomial equalities — no floating point anywhere.
//!
//! The crate is `no_std` (with `alloc`); IO, timing and the command line live
//! in the companion `umbra-cli` crate.
//!
//! ```
//! use umbra_core::{falling_factorial, pairing, transfer, Poly, LambdaRat, Series};
//!
//! // (x)_n is the associated sequence of e^t - 1: transfer x^2 over ...
//! let t = Series::t(4);
//! let f = Series::exp_t(4).sub(&Series::one(4)).unwrap();
//! let x2 = Poly::monomial(LambdaRat::one(), 2);
//! let p2 = transfer(&t, &f, &x2, 2).unwrap();
//! assert_eq!(p2, falling_factorial(2));
//!
//! // ... and <f^2 | (x)_2> = 2! while <f | (x)_2> vanishes.
//! assert_eq!(pairing(&f.pow(2).unwrap(), &p2).unwrap(), LambdaRat::from_int(2));
//! assert!(pairing(&f, &p2).unwrap().is_zero());
//! ```

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod error;
pub mod families;
pub mod identities;
pub mod poly;
pub mod scalar;
pub mod series;
pub mod text;
pub mod umbral;

pub use error::{Error, Result};
pub use poly::{falling_factorial, Poly};
pub use scalar::{IntPoly, LambdaRat, Rational};
pub use series::{Series, ShefferPair};
pub use umbral::{
    apply_op, associated_by_inverse, is_associated, is_sheffer, pairing, transfer, AssociatedFamily,
};
