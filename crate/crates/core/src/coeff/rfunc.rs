use std::fmt;

use super::{lcm_u64, BiPoly, BinomFrac, CoeffError, Field, Laurent, Ring, SFunc};

/// Reduced rational function in the perturbation root `r = w^(1/root)` with [`SFunc`] coefficients.
///
/// Canonical form mirrors [`SFunc`]: coprime numerator and denominator (gcd over
/// the fraction field of `s`), denominator an ordinary polynomial in `r` with
/// constant term 1, smallest root.
#[derive(Clone, PartialEq)]
pub struct RFunc {
    num: Laurent<SFunc>,
    den: Laurent<SFunc>,
}

fn trim(p: &mut Vec<SFunc>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

/// Remainder of `a` modulo `b` over the coefficient field.
fn rem(a: &[SFunc], b: &[SFunc]) -> Vec<SFunc> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let inv = b[db].inverse().expect("nonzero leading coefficient");
    while r.len() > db {
        let dr = r.len() - 1;
        let c = r[dr].times(&inv);
        for (i, bc) in b.iter().enumerate() {
            r[dr - db + i] = r[dr - db + i].minus(&c.times(bc));
        }
        r.pop();
        trim(&mut r);
    }
    r
}

fn quo_exact(a: &[SFunc], b: &[SFunc]) -> Vec<SFunc> {
    let db = b.len() - 1;
    let inv = b[db].inverse().expect("nonzero leading coefficient");
    let mut r = a.to_vec();
    let mut q = vec![SFunc::zero(); a.len() - db];
    for k in (0..q.len()).rev() {
        let c = r[k + db].times(&inv);
        for (i, bc) in b.iter().enumerate() {
            r[k + i] = r[k + i].minus(&c.times(bc));
        }
        q[k] = c;
    }
    debug_assert!(r.iter().all(|c| c.is_zero()));
    trim(&mut q);
    q
}

fn gcd(a: &[SFunc], b: &[SFunc]) -> Vec<SFunc> {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    while !b.is_empty() {
        let r = rem(&a, &b);
        a = b;
        b = r;
    }
    a
}

/// Divides by `(r - 1)` as often as possible; returns the order and the cofactor.
fn split_r_minus_one(mut p: Vec<SFunc>) -> (u32, Vec<SFunc>) {
    let mut order = 0;
    loop {
        if p.len() < 2 {
            return (order, p);
        }
        let mut quotient = vec![SFunc::zero(); p.len() - 1];
        let mut carry = SFunc::zero();
        for i in (1..p.len()).rev() {
            carry = carry.plus(&p[i]);
            quotient[i - 1] = carry.clone();
        }
        if !carry.plus(&p[0]).is_zero() {
            return (order, p);
        }
        order += 1;
        p = quotient;
    }
}

fn sum(p: &[SFunc]) -> SFunc {
    p.iter().fold(SFunc::zero(), |acc, c| acc.plus(c))
}

impl RFunc {
    pub fn new(num: Laurent<SFunc>, den: Laurent<SFunc>) -> Result<Self, CoeffError> {
        if den.is_zero() {
            return Err(CoeffError::ZeroDenominator);
        }
        Ok(Self::reduce(num, den))
    }

    pub fn from_sfunc(c: SFunc) -> Self {
        RFunc { num: Laurent::constant(c), den: Laurent::one() }
    }

    /// Converts a binomial fraction over `Q[s, r]` into reduced form.
    pub fn from_binom(f: &BinomFrac<BiPoly>) -> Self {
        let lift = |p: &BiPoly| p.map_coeffs(|c| SFunc::from_poly(c.clone()));
        Self::reduce(lift(f.numerator()), lift(&f.den_expanded()))
    }

    pub fn numerator(&self) -> &Laurent<SFunc> {
        &self.num
    }

    pub fn denominator(&self) -> &Laurent<SFunc> {
        &self.den
    }

    pub fn root_order_r(&self) -> u64 {
        self.num.root()
    }

    fn reduce(num: Laurent<SFunc>, den: Laurent<SFunc>) -> Self {
        if num.is_zero() {
            return <Self as Ring>::zero();
        }
        let root = lcm_u64(num.root(), den.root());
        let (_, nlow, n) = num.with_root(root).into_dense();
        let (_, dlow, d) = den.with_root(root).into_dense();
        let (n, d) = if d.len() == 1 {
            (n, d)
        } else {
            let g = gcd(&n, &d);
            if g.len() == 1 {
                (n, d)
            } else {
                (quo_exact(&n, &g), quo_exact(&d, &g))
            }
        };
        let c = d[0].inverse().expect("constant term nonzero after shifting");
        let num = Laurent::from_dense(root, nlow - dlow, n.iter().map(|x| x.times(&c)).collect());
        let den = Laurent::from_dense(root, 0, d.iter().map(|x| x.times(&c)).collect());
        let g = num_integer::gcd(num.exponent_gcd(), den.exponent_gcd());
        RFunc { num: num.compressed(g), den: den.compressed(g) }
    }
}

/// Value at `w = 1` (approached along `r -> 1`), the `eps -> 0` limit.
pub fn rfunc_limit_w1(f: &RFunc) -> Result<SFunc, CoeffError> {
    if f.num.is_zero() {
        return Ok(SFunc::zero());
    }
    let (on, n) = split_r_minus_one(f.num.dense().to_vec());
    let (od, d) = split_r_minus_one(f.den.dense().to_vec());
    if od > on {
        return Err(CoeffError::PoleAtOne);
    }
    if on > od {
        return Ok(SFunc::zero());
    }
    Ok(sum(&n).divide(&sum(&d)).expect("cofactor nonzero at r = 1"))
}

impl Ring for RFunc {
    fn zero() -> Self {
        RFunc { num: Laurent::zero(), den: Laurent::one() }
    }
    fn one() -> Self {
        RFunc { num: Laurent::one(), den: Laurent::one() }
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
            return Self::reduce(self.num.plus(&rhs.num), self.den.clone());
        }
        Self::reduce(self.num.times(&rhs.den).plus(&rhs.num.times(&self.den)), self.den.times(&rhs.den))
    }
    fn minus(&self, rhs: &Self) -> Self {
        self.plus(&rhs.negate())
    }
    fn times(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        Self::reduce(self.num.times(&rhs.num), self.den.times(&rhs.den))
    }
    fn negate(&self) -> Self {
        RFunc { num: self.num.negate(), den: self.den.clone() }
    }
    fn from_rational(r: &super::Rational) -> Self {
        Self::from_sfunc(SFunc::from_rational(r))
    }
}

impl Field for RFunc {
    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(Self::reduce(self.den.clone(), self.num.clone()))
    }
}

impl fmt::Debug for RFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RFunc({:?} / {:?})", self.num, self.den)
    }
}
