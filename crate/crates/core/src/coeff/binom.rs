use std::collections::BTreeMap;
use std::fmt;

use num_traits::Signed;

use super::upoly::divisors;
use super::{denom_u64, lcm_u64, scaled_int, BiPoly, CoeffError, Laurent, Rational, Ring, SFunc, SPoly};

/// A ring of Laurent polynomials that contains the monomials `y^a w^b`.
pub trait ExpRing: Ring {
    /// The monomial `y^a w^b`. Rings without a `w` variable panic on `b != 0`.
    fn y_w_power(a: &Rational, b: &Rational) -> Self;
}

impl ExpRing for SPoly {
    fn y_w_power(a: &Rational, b: &Rational) -> Self {
        assert!(b.is_zero(), "SPoly has no w variable");
        SPoly::power(Rational::one(), a)
    }
}

impl ExpRing for BiPoly {
    fn y_w_power(a: &Rational, b: &Rational) -> Self {
        Laurent::power(SPoly::power(Rational::one(), a), b)
    }
}

/// The binomial `x^(1/2) - x^(-1/2)` with `x = y^y w^w`.
///
/// Keys are normalized so the first nonzero exponent is positive; the sign
/// flip is absorbed into the numerator of the owning fraction.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct BinomKey {
    pub y: Rational,
    pub w: Rational,
}

impl BinomKey {
    /// Normalized key and the sign relating it to the requested binomial,
    /// or `None` when `x = 1` and the binomial vanishes.
    pub fn normalized(y: Rational, w: Rational) -> Option<(BinomKey, bool)> {
        if y.is_zero() && w.is_zero() {
            return None;
        }
        let flip = if y.is_zero() { w.is_negative() } else { y.is_negative() };
        if flip {
            Some((BinomKey { y: -y, w: -w }, true))
        } else {
            Some((BinomKey { y, w }, false))
        }
    }

    pub fn expand<R: ExpRing>(&self) -> R {
        let two = Rational::from_integer(2.into());
        let hy = &self.y / &two;
        let hw = &self.w / &two;
        R::y_w_power(&hy, &hw).minus(&R::y_w_power(&-hy, &-hw))
    }
}

/// Numerator in `R` over a product of binomials.
#[derive(Clone)]
pub struct BinomFrac<R> {
    num: R,
    den: BTreeMap<BinomKey, u32>,
}

impl<R: ExpRing> BinomFrac<R> {
    pub fn from_num(num: R) -> Self {
        BinomFrac { num, den: BTreeMap::new() }
    }

    pub fn numerator(&self) -> &R {
        &self.num
    }

    pub fn denominator(&self) -> &BTreeMap<BinomKey, u32> {
        &self.den
    }

    /// `1 / (x^(1/2) - x^(-1/2))^e` with `x = y^y w^w`.
    pub fn inverse_binomial(y: &Rational, w: &Rational, e: u32) -> Result<Self, CoeffError> {
        let (key, flip) = BinomKey::normalized(y.clone(), w.clone()).ok_or(CoeffError::DivisionByZero)?;
        let sign = if flip && e % 2 == 1 { R::one().negate() } else { R::one() };
        let mut den = BTreeMap::new();
        if e > 0 {
            den.insert(key, e);
        }
        Ok(BinomFrac { num: sign, den })
    }

    /// Product of the denominator binomials raised to `extra` exponents.
    fn expand_factors(factors: &BTreeMap<BinomKey, u32>) -> R {
        let mut acc = R::one();
        for (k, &e) in factors {
            let b: R = k.expand();
            for _ in 0..e {
                acc = acc.times(&b);
            }
        }
        acc
    }

    /// Numerators of both operands over their least common denominator.
    fn over_common(&self, rhs: &Self) -> (R, R, BTreeMap<BinomKey, u32>) {
        let mut den = self.den.clone();
        for (k, &e) in &rhs.den {
            let slot = den.entry(k.clone()).or_insert(0);
            *slot = (*slot).max(e);
        }
        let missing = |own: &BTreeMap<BinomKey, u32>| -> BTreeMap<BinomKey, u32> {
            den.iter()
                .filter_map(|(k, &e)| {
                    let have = own.get(k).copied().unwrap_or(0);
                    (e > have).then(|| (k.clone(), e - have))
                })
                .collect()
        };
        let a = self.num.times(&Self::expand_factors(&missing(&self.den)));
        let b = rhs.num.times(&Self::expand_factors(&missing(&rhs.den)));
        (a, b, den)
    }

    fn normalized(num: R, den: BTreeMap<BinomKey, u32>) -> Self {
        if num.is_zero() {
            BinomFrac { num, den: BTreeMap::new() }
        } else {
            BinomFrac { num, den }
        }
    }

    /// Numerator times the product of all denominator binomials gives back the value.
    pub fn den_expanded(&self) -> R {
        Self::expand_factors(&self.den)
    }
}

impl BinomFrac<SPoly> {
    /// Canonical rational function via cyclotomic cancellation.
    pub fn to_sfunc(&self) -> SFunc {
        if self.num.is_zero() {
            return SFunc::zero();
        }
        let two = Rational::from_integer(2.into());
        let mut root = self.num.root();
        for k in self.den.keys() {
            assert!(k.w.is_zero(), "w-binomial in an SPoly fraction");
            root = lcm_u64(root, denom_u64(&(&k.y / &two)));
        }
        // s^k - s^-k = s^-k (s^2k - 1) = s^-k prod_{d | 2k} Phi_d(s)
        let mut shift = 0i64;
        let mut phis: BTreeMap<u64, u32> = BTreeMap::new();
        for (key, &e) in &self.den {
            let k = scaled_int(&(&key.y / &two), root);
            debug_assert!(k > 0);
            shift += k * e as i64;
            for d in divisors(2 * k as u64) {
                *phis.entry(d).or_insert(0) += e;
            }
        }
        let num = self.num.with_root(root).shifted(shift);
        SFunc::over_cyclotomics(num, &phis)
    }
}

impl BinomFrac<BiPoly> {
    /// Value at `w = 1`, i.e. the `eps -> 0` limit of `y^(eps b) = w^b`.
    ///
    /// Pure-`w` binomials vanish to first order at `r = 1` (where `r` is the
    /// root of `w`), so the numerator must be divisible by `(r - 1)` that many
    /// times; otherwise the limit does not exist.
    pub fn limit_w1(&self) -> Result<BinomFrac<SPoly>, CoeffError> {
        let two = Rational::from_integer(2.into());
        let mut r_root = self.num.root();
        for k in self.den.keys() {
            r_root = lcm_u64(r_root, denom_u64(&(&k.w / &two)));
        }
        let mut order = 0u32;
        let mut cofactor = Rational::one();
        let mut den: BTreeMap<BinomKey, u32> = BTreeMap::new();
        for (key, &e) in &self.den {
            if key.y.is_zero() {
                // r^k - r^-k = r^-k (r - 1)(1 + r + ... + r^(2k-1)), cofactor 2k at r = 1
                let k = scaled_int(&(&key.w / &two), r_root);
                order += e;
                for _ in 0..e {
                    cofactor *= Rational::from_integer((2 * k).into());
                }
            } else {
                let (k, flip) = BinomKey::normalized(key.y.clone(), Rational::zero()).unwrap();
                debug_assert!(!flip);
                *den.entry(k).or_insert(0) += e;
            }
        }
        let (_, _, mut coeffs) = self.num.with_root(r_root).into_dense();
        for _ in 0..order {
            // Synthetic division by (r - 1); the remainder is the value at r = 1.
            if coeffs.is_empty() {
                break;
            }
            let mut quotient = vec![SPoly::zero(); coeffs.len() - 1];
            let mut carry = SPoly::zero();
            for i in (1..coeffs.len()).rev() {
                carry = carry.plus(&coeffs[i]);
                quotient[i - 1] = carry.clone();
            }
            let remainder = carry.plus(&coeffs[0]);
            if !remainder.is_zero() {
                return Err(CoeffError::PoleAtOne);
            }
            coeffs = quotient;
        }
        let value = coeffs.iter().fold(SPoly::zero(), |acc, c| acc.plus(c));
        Ok(BinomFrac::normalized(value.scale(&cofactor.recip()), den))
    }
}

impl<R: ExpRing> Ring for BinomFrac<R> {
    fn zero() -> Self {
        Self::from_num(R::zero())
    }
    fn one() -> Self {
        Self::from_num(R::one())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn plus(&self, rhs: &Self) -> Self {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        if self.den == rhs.den {
            return Self::normalized(self.num.plus(&rhs.num), self.den.clone());
        }
        let (a, b, den) = self.over_common(rhs);
        Self::normalized(a.plus(&b), den)
    }
    fn minus(&self, rhs: &Self) -> Self {
        self.plus(&rhs.negate())
    }
    fn times(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut den = self.den.clone();
        for (k, &e) in &rhs.den {
            *den.entry(k.clone()).or_insert(0) += e;
        }
        Self::normalized(self.num.times(&rhs.num), den)
    }
    fn negate(&self) -> Self {
        BinomFrac { num: self.num.negate(), den: self.den.clone() }
    }
    fn from_rational(r: &Rational) -> Self {
        Self::from_num(R::from_rational(r))
    }
    fn scale(&self, r: &Rational) -> Self {
        Self::normalized(self.num.scale(r), self.den.clone())
    }
}

impl<R: ExpRing> PartialEq for BinomFrac<R> {
    fn eq(&self, other: &Self) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        let (a, b, _) = self.over_common(other);
        a == b
    }
}

impl<R: ExpRing> fmt::Debug for BinomFrac<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BinomFrac").field("num", &self.num).field("den", &self.den).finish()
    }
}
