use std::collections::BTreeMap;
use std::fmt;

use super::upoly::{self, div_exact_monic, div_exact_q, gcd_z, primitive_part, to_q, trim_q};
use super::{lcm_u64, CoeffError, Field, Rational, Ring, SPoly};

/// Reduced rational function in `s = y^(1/root)`.
///
/// Canonical form: numerator and denominator share the smallest root that
/// represents the value, are coprime, and the denominator is an ordinary
/// polynomial whose constant term is 1. Any monomial factor lives in the
/// numerator. Structural equality is therefore value equality.
#[derive(Clone, PartialEq)]
pub struct SFunc {
    num: SPoly,
    den: SPoly,
}

impl SFunc {
    /// Reduces `num / den` to canonical form.
    pub fn new(num: SPoly, den: SPoly) -> Result<Self, CoeffError> {
        if den.is_zero() {
            return Err(CoeffError::ZeroDenominator);
        }
        Ok(Self::reduce(num, den))
    }

    pub fn from_poly(p: SPoly) -> Self {
        Self::reduce(p, SPoly::one())
    }

    pub fn numerator(&self) -> &SPoly {
        &self.num
    }

    pub fn denominator(&self) -> &SPoly {
        &self.den
    }

    /// Root order of the canonical representation.
    pub fn root_order(&self) -> u64 {
        self.num.root()
    }

    /// True when the denominator is 1.
    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    fn reduce(num: SPoly, den: SPoly) -> Self {
        if num.is_zero() {
            return SFunc { num: SPoly::zero(), den: SPoly::one() };
        }
        let root = lcm_u64(num.root(), den.root());
        let (_, nlow, n) = num.with_root(root).into_dense();
        let (_, dlow, d) = den.with_root(root).into_dense();
        let (n, d) = if d.len() == 1 {
            (n, d)
        } else {
            let g = gcd_z(&primitive_part(&n), &primitive_part(&d));
            if g.len() == 1 {
                (n, d)
            } else {
                let g = to_q(&g);
                (div_exact_q(&n, &g).expect("gcd divides numerator"), div_exact_q(&d, &g).expect("gcd divides denominator"))
            }
        };
        Self::normalized(root, nlow - dlow, n, d)
    }

    /// Scales so the denominator's constant term is 1 and shrinks the root.
    fn normalized(root: u64, shift: i64, n: Vec<Rational>, d: Vec<Rational>) -> Self {
        let c = d[0].recip();
        let n: Vec<Rational> = n.into_iter().map(|x| x * &c).collect();
        let d: Vec<Rational> = d.into_iter().map(|x| x * &c).collect();
        let num = SPoly::from_dense(root, shift, n);
        let den = SPoly::from_dense(root, 0, d);
        let g = num_integer::gcd(num.exponent_gcd(), den.exponent_gcd());
        SFunc { num: num.compressed(g), den: den.compressed(g) }
    }

    /// Canonical form of `num / prod_d Phi_d(s)^e_d`, where `s` is the root
    /// variable of `num` and the map gives cyclotomic exponents.
    ///
    /// Every irreducible factor of the denominator is cyclotomic, so trial
    /// division replaces the general gcd.
    pub fn over_cyclotomics(num: SPoly, phis: &BTreeMap<u64, u32>) -> Self {
        if num.is_zero() {
            return SFunc { num: SPoly::zero(), den: SPoly::one() };
        }
        let (root, low, mut n) = num.into_dense();
        let mut den: Vec<num_bigint::BigInt> = vec![num_bigint::BigInt::from(1)];
        for (&d, &e) in phis {
            let phi = upoly::cyclotomic(d);
            let mut left = e;
            while left > 0 {
                match div_exact_monic(&n, &phi) {
                    Some(q) => {
                        n = q;
                        left -= 1;
                    }
                    None => break,
                }
            }
            for _ in 0..left {
                den = upoly::mul_z(&den, &phi);
            }
        }
        let mut d = to_q(&den);
        trim_q(&mut d);
        Self::normalized(root, low, n, d)
    }

    /// Multiplies by `y^e` without any gcd work.
    pub fn times_y_power(&self, e: &Rational) -> Self {
        let m = SPoly::power(Rational::one(), e);
        let num = self.num.times(&m);
        let root = lcm_u64(num.root(), self.den.root());
        let num = num.with_root(root);
        let den = self.den.with_root(root);
        let g = num_integer::gcd(num.exponent_gcd(), den.exponent_gcd());
        SFunc { num: num.compressed(g), den: den.compressed(g) }
    }

    /// Canonical text `N` or `(N)/(D)` in the variable `y`.
    pub fn render(&self) -> String {
        if self.den.is_one() {
            self.num.render("y")
        } else {
            format!("({})/({})", self.num.render("y"), self.den.render("y"))
        }
    }

    /// Checks the canonical-form invariants; used by tests.
    pub fn is_canonical(&self) -> bool {
        if self.num.root() != self.den.root() || self.den.low() != 0 || !self.den.coefficient(0).is_one() {
            return false;
        }
        let g = num_integer::gcd(self.num.exponent_gcd(), self.den.exponent_gcd());
        if g != 1 && !self.num.is_zero() {
            return false;
        }
        let n = primitive_part(self.num.dense());
        let d = primitive_part(self.den.dense());
        d.len() == 1 || gcd_z(&n, &d).len() == 1
    }
}

/// Value at `s = 1`, or [`CoeffError::PoleAtOne`] if the reduced denominator vanishes there.
pub fn sfunc_eval_at_s1(f: &SFunc) -> Result<Rational, CoeffError> {
    let d = f.den.eval_at_one();
    if d.is_zero() {
        return Err(CoeffError::PoleAtOne);
    }
    Ok(f.num.eval_at_one() / d)
}

impl Ring for SFunc {
    fn zero() -> Self {
        SFunc { num: SPoly::zero(), den: SPoly::one() }
    }
    fn one() -> Self {
        SFunc { num: SPoly::one(), den: SPoly::one() }
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
        if self.den.is_one() && rhs.den.is_one() {
            return Self::from_poly(self.num.times(&rhs.num));
        }
        Self::reduce(self.num.times(&rhs.num), self.den.times(&rhs.den))
    }
    fn negate(&self) -> Self {
        SFunc { num: self.num.negate(), den: self.den.clone() }
    }
    fn from_rational(r: &Rational) -> Self {
        Self::from_poly(SPoly::constant(r.clone()))
    }
    fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        SFunc { num: self.num.scale(r), den: self.den.clone() }
    }
}

impl Field for SFunc {
    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(Self::reduce(self.den.clone(), self.num.clone()))
    }
}

impl fmt::Debug for SFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SFunc({})", self.render())
    }
}

impl fmt::Display for SFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

#[cfg(test)]
/// True when two fractions agree by cross-multiplication; independent of canonical form.
pub(crate) fn cross_equal(a: (&SPoly, &SPoly), b: (&SPoly, &SPoly)) -> bool {
    a.0.times(b.1) == b.0.times(a.1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{rat, ratio};

    fn sp(root: u64, terms: &[(i64, i64)]) -> SPoly {
        SPoly::from_terms(root, terms.iter().map(|&(e, c)| (e, rat(c))))
    }

    #[test]
    fn eval_at_one_examples() {
        // (s^2 - 1)/(s - 1) = s + 1
        let f = SFunc::new(sp(1, &[(2, 1), (0, -1)]), sp(1, &[(1, 1), (0, -1)])).unwrap();
        assert_eq!(sfunc_eval_at_s1(&f), Ok(rat(2)));
        let g = SFunc::new(SPoly::one(), sp(1, &[(1, 1), (0, -1)])).unwrap();
        assert_eq!(sfunc_eval_at_s1(&g), Err(CoeffError::PoleAtOne));
        // (y - 1)/(y^2 - 1) with y = s^2
        let h = SFunc::new(sp(2, &[(2, 1), (0, -1)]), sp(2, &[(4, 1), (0, -1)])).unwrap();
        assert_eq!(sfunc_eval_at_s1(&h), Ok(ratio(1, 2)));
        assert_eq!(h.render(), "(1)/(1 + y)");
    }

    #[test]
    fn canonical_moves_monomials_and_normalizes() {
        // (2y^2)/(4y^3 - 4y) = (1/2) y / (y^2 - 1) -> -(1/2)y/(1 - y^2)
        let f = SFunc::new(sp(1, &[(2, 2)]), sp(1, &[(3, 4), (1, -4)])).unwrap();
        assert!(f.is_canonical());
        assert_eq!(f.render(), "(-1/2*y)/(1 - y^2)");
        assert_eq!(SFunc::new(SPoly::one(), SPoly::zero()), Err(CoeffError::ZeroDenominator));
    }

    #[test]
    fn cyclotomic_route_matches_gcd_route() {
        // (s^6 - 1)(s + 3) / ((s^2 - 1)^2 (s^3 - 1))
        let num = sp(1, &[(6, 1), (0, -1)]).times(&sp(1, &[(1, 1), (0, 3)]));
        let den = sp(1, &[(2, 1), (0, -1)]).times(&sp(1, &[(2, 1), (0, -1)])).times(&sp(1, &[(3, 1), (0, -1)]));
        let via_gcd = SFunc::new(num.clone(), den.clone()).unwrap();
        assert!(cross_equal((via_gcd.numerator(), via_gcd.denominator()), (&num, &den)));
        let mut phis = BTreeMap::new();
        phis.insert(1, 3);
        phis.insert(2, 2);
        phis.insert(3, 1);
        let via_cyc = SFunc::over_cyclotomics(num, &phis);
        assert_eq!(via_gcd, via_cyc);
        assert!(via_cyc.is_canonical());
    }

    #[test]
    fn root_shrinks_to_minimum() {
        let f = SFunc::new(sp(6, &[(6, 1), (0, 1)]), sp(6, &[(12, 1), (0, -1)])).unwrap();
        assert_eq!(f.root_order(), 1);
        assert_eq!(f.render(), "(-1)/(1 - y)");
    }
}
