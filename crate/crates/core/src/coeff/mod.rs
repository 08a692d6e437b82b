//! Exact scalar tower used by every series coefficient.
//!
//! The layers are:
//! - [`Rational`]: arbitrary precision rationals.
//! - [`Laurent`]: Laurent polynomials in a root `s = y^(1/root)` (or `r = w^(1/root)`), generic over the coefficient ring.
//! - [`SFunc`]: reduced rational functions in `s`.
//! - [`RFunc`]: reduced rational functions in the perturbation root `r` over [`SFunc`].
//!
//! [`BinomFrac`] is a working representation (numerator over a product of
//! binomials `x^(1/2) - x^(-1/2)`) that every theta ratio naturally lands in.
//! It defers all gcd work to a single cyclotomic cancellation at the end.

mod binom;
mod laurent;
mod rfunc;
mod sfunc;
pub(crate) mod upoly;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub use binom::{BinomFrac, BinomKey, ExpRing};
pub use laurent::{BiPoly, Laurent, SPoly};
pub use rfunc::{rfunc_limit_w1, RFunc};
pub use sfunc::{sfunc_eval_at_s1, SFunc};

/// Reduced fraction with a positive denominator.
pub type Rational = num_rational::BigRational;

/// Errors raised by exact coefficient arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CoeffError {
    #[error("denominator is zero")]
    ZeroDenominator,
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator vanishes at the evaluation point")]
    PoleAtOne,
}

/// Commutative ring with exact equality.
///
/// Method names avoid clashing with `std::ops`, which `BigRational` also implements.
pub trait Ring: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, rhs: &Self) -> Self;
    fn minus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn negate(&self) -> Self;
    fn from_rational(r: &Rational) -> Self;

    fn from_int(n: i64) -> Self {
        Self::from_rational(&Rational::from_integer(BigInt::from(n)))
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn scale(&self, r: &Rational) -> Self {
        self.times(&Self::from_rational(r))
    }
}

/// A [`Ring`] in which every nonzero element is invertible.
pub trait Field: Ring {
    /// Multiplicative inverse, `None` for zero.
    fn inverse(&self) -> Option<Self>;

    fn divide(&self, rhs: &Self) -> Option<Self> {
        rhs.inverse().map(|inv| self.times(&inv))
    }
}

impl Ring for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negate(&self) -> Self {
        -self
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
}

impl Field for Rational {
    fn inverse(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
}

/// Shorthand for an integer rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for `p/q`. Panics if `q == 0`.
pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Parses `"p/q"` or `"p"` into a rational.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    let (p, q) = match text.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (text, "1"),
    };
    let p: BigInt = p.parse().ok()?;
    let q: BigInt = q.parse().ok()?;
    if q.is_zero() {
        return None;
    }
    Some(Rational::new(p, q))
}

/// Renders a rational as `p` or `p/q`.
pub fn render_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Least common multiple of two positive integers.
pub(crate) fn lcm_u64(a: u64, b: u64) -> u64 {
    num_integer::lcm(a, b)
}

/// Denominator of a rational as a `u64`. Panics on absurdly large values.
pub(crate) fn denom_u64(r: &Rational) -> u64 {
    u64::try_from(r.denom().clone()).expect("exponent denominator fits in u64")
}

/// Converts `r * scale` to an integer, panicking if it is not one.
pub(crate) fn scaled_int(r: &Rational, scale: u64) -> i64 {
    let v = r * Rational::from_integer(BigInt::from(scale));
    assert!(v.is_integer(), "exponent {r} is not a multiple of 1/{scale}");
    i64::try_from(v.to_integer()).expect("exponent fits in i64")
}
