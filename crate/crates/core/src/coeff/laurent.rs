use std::fmt;

use num_integer::Integer;

use super::{denom_u64, lcm_u64, render_rational, scaled_int, Rational, Ring};

/// Laurent polynomial in `x^(1/root)`, stored densely from the lowest nonzero exponent.
///
/// Exponents are integers in units of `1/root`. Values with different roots are
/// rescaled to the lcm before any binary operation, so equality and arithmetic
/// never depend on the chosen root.
#[derive(Clone)]
pub struct Laurent<C> {
    root: u64,
    low: i64,
    coeffs: Vec<C>,
}

/// Laurent polynomial in `s = y^(1/root)` with rational coefficients.
pub type SPoly = Laurent<Rational>;

/// Laurent polynomial in the perturbation root `r` with [`SPoly`] coefficients.
pub type BiPoly = Laurent<SPoly>;

impl<C: Ring> Laurent<C> {
    /// Builds from dense coefficients starting at exponent `low`.
    pub fn from_dense(root: u64, low: i64, coeffs: Vec<C>) -> Self {
        assert!(root > 0, "root order must be positive");
        let mut p = Laurent { root, low, coeffs };
        p.trim();
        p
    }

    /// Builds from `(exponent, coefficient)` pairs; repeated exponents are summed.
    pub fn from_terms(root: u64, terms: impl IntoIterator<Item = (i64, C)>) -> Self {
        let terms: Vec<(i64, C)> = terms.into_iter().collect();
        if terms.is_empty() {
            return Self::zero_with_root(root);
        }
        let low = terms.iter().map(|t| t.0).min().unwrap();
        let high = terms.iter().map(|t| t.0).max().unwrap();
        let mut coeffs = vec![C::zero(); (high - low + 1) as usize];
        for (e, c) in terms {
            let slot = &mut coeffs[(e - low) as usize];
            *slot = slot.plus(&c);
        }
        Self::from_dense(root, low, coeffs)
    }

    pub fn zero_with_root(root: u64) -> Self {
        Laurent { root, low: 0, coeffs: Vec::new() }
    }

    /// `c * x^(exp/root)`.
    pub fn monomial(c: C, exp: i64, root: u64) -> Self {
        Self::from_dense(root, exp, vec![c])
    }

    /// `c * x^e` for a rational exponent, using the smallest root that represents it.
    pub fn power(c: C, e: &Rational) -> Self {
        let root = denom_u64(e);
        Self::monomial(c, scaled_int(e, root), root)
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(c, 0, 1)
    }

    pub fn root(&self) -> u64 {
        self.root
    }

    /// Lowest exponent with a nonzero coefficient (0 for the zero polynomial).
    pub fn low(&self) -> i64 {
        self.low
    }

    /// Highest exponent with a nonzero coefficient.
    pub fn high(&self) -> i64 {
        self.low + self.coeffs.len() as i64 - 1
    }

    /// Dense coefficient slice starting at [`Laurent::low`].
    pub fn dense(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_dense(self) -> (u64, i64, Vec<C>) {
        (self.root, self.low, self.coeffs)
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &C)> {
        let low = self.low;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (low + i as i64, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms().count()
    }

    /// Coefficient of `x^(exp/root)` in this value's own root.
    pub fn coefficient(&self, exp: i64) -> C {
        let idx = exp - self.low;
        if idx < 0 || idx as usize >= self.coeffs.len() {
            C::zero()
        } else {
            self.coeffs[idx as usize].clone()
        }
    }

    /// Coefficient of `x^e` for a rational exponent.
    pub fn coefficient_at(&self, e: &Rational) -> C {
        let scaled = e * Rational::from_integer(self.root.into());
        if !scaled.is_integer() {
            return C::zero();
        }
        self.coefficient(i64::try_from(scaled.to_integer()).expect("exponent fits in i64"))
    }

    /// Same value expressed with root `root * factor`.
    pub fn rescaled(&self, factor: u64) -> Self {
        assert!(factor > 0);
        if factor == 1 || self.coeffs.is_empty() {
            return Laurent { root: self.root * factor, low: self.low * factor as i64, coeffs: self.coeffs.clone() };
        }
        let f = factor as usize;
        let mut coeffs = vec![C::zero(); (self.coeffs.len() - 1) * f + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * f] = c.clone();
        }
        Laurent { root: self.root * factor, low: self.low * factor as i64, coeffs }
    }

    /// Same value expressed with root `root`, which must be a multiple of the current root.
    pub fn with_root(&self, root: u64) -> Self {
        assert!(root % self.root == 0, "root {root} is not a multiple of {}", self.root);
        self.rescaled(root / self.root)
    }

    /// Expresses the value with the smallest possible root.
    pub fn with_min_root(&self) -> Self {
        let g = self.exponent_gcd();
        if g <= 1 {
            return self.clone();
        }
        self.compressed(g)
    }

    /// gcd of the root and every exponent carrying a nonzero coefficient.
    pub(crate) fn exponent_gcd(&self) -> u64 {
        let mut g = self.root;
        for (e, _) in self.terms() {
            g = g.gcd(&e.unsigned_abs());
            if g == 1 {
                break;
            }
        }
        g
    }

    /// Divides root and all exponents by `g`; every nonzero exponent must be a multiple of `g`.
    pub(crate) fn compressed(&self, g: u64) -> Self {
        if g == 1 {
            return self.clone();
        }
        let terms: Vec<(i64, C)> = self.terms().map(|(e, c)| (e / g as i64, c.clone())).collect();
        Laurent::from_terms(self.root / g, terms)
    }

    /// Multiplies by `x^(k/root)`.
    pub fn shifted(&self, k: i64) -> Self {
        if self.coeffs.is_empty() {
            return self.clone();
        }
        Laurent { root: self.root, low: self.low + k, coeffs: self.coeffs.clone() }
    }

    pub fn map_coeffs<D: Ring>(&self, f: impl Fn(&C) -> D) -> Laurent<D> {
        Laurent::from_dense(self.root, self.low, self.coeffs.iter().map(f).collect())
    }

    /// Evaluates with `x^(1/root) = s`, mapping coefficients through `f`.
    pub fn eval_with<T>(&self, s: T, f: impl Fn(&C) -> T) -> T
    where
        T: Clone + std::ops::Mul<Output = T> + std::ops::Add<Output = T> + num_traits::Inv<Output = T> + num_traits::One + num_traits::Zero,
    {
        if self.coeffs.is_empty() {
            return T::zero();
        }
        // Horner from the top, then scale by s^low.
        let mut acc = T::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * s.clone() + f(c);
        }
        acc * int_pow(s, self.low)
    }

    /// Substitutes `x -> x^k` for a positive integer `k` by scaling exponents.
    pub fn dilated(&self, k: u64) -> Self {
        let terms: Vec<(i64, C)> = self.terms().map(|(e, c)| (e * k as i64, c.clone())).collect();
        Laurent::from_terms(self.root, terms)
    }

    /// Substitutes `x -> x^(-1)`.
    pub fn reflected(&self) -> Self {
        let terms: Vec<(i64, C)> = self.terms().map(|(e, c)| (-e, c.clone())).collect();
        Laurent::from_terms(self.root, terms)
    }

    fn trim(&mut self) {
        let start = self.coeffs.iter().position(|c| !c.is_zero());
        match start {
            None => {
                self.coeffs.clear();
                self.low = 0;
            }
            Some(s) => {
                let end = self.coeffs.iter().rposition(|c| !c.is_zero()).unwrap();
                self.coeffs.truncate(end + 1);
                if s > 0 {
                    self.coeffs.drain(..s);
                    self.low += s as i64;
                }
            }
        }
    }

    fn add_impl(&self, rhs: &Self, negate_rhs: bool) -> Self {
        if self.root != rhs.root {
            let root = lcm_u64(self.root, rhs.root);
            return self.with_root(root).add_impl(&rhs.with_root(root), negate_rhs);
        }
        if rhs.coeffs.is_empty() {
            return self.clone();
        }
        if self.coeffs.is_empty() {
            return if negate_rhs { rhs.negate() } else { rhs.clone() };
        }
        let low = self.low.min(rhs.low);
        let high = self.high().max(rhs.high());
        let mut coeffs = vec![C::zero(); (high - low + 1) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[(self.low - low) as usize + i] = c.clone();
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            let slot = &mut coeffs[(rhs.low - low) as usize + i];
            *slot = if negate_rhs { slot.minus(c) } else { slot.plus(c) };
        }
        Self::from_dense(self.root, low, coeffs)
    }
}

fn int_pow<T>(s: T, e: i64) -> T
where
    T: Clone + std::ops::Mul<Output = T> + num_traits::Inv<Output = T> + num_traits::One,
{
    let base = if e < 0 { s.inv() } else { s };
    let mut n = e.unsigned_abs();
    let mut acc = T::one();
    let mut b = base;
    while n > 0 {
        if n & 1 == 1 {
            acc = acc * b.clone();
        }
        b = b.clone() * b;
        n >>= 1;
    }
    acc
}

impl<C: Ring> Ring for Laurent<C> {
    fn zero() -> Self {
        Self::zero_with_root(1)
    }
    fn one() -> Self {
        Self::constant(C::one())
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn plus(&self, rhs: &Self) -> Self {
        self.add_impl(rhs, false)
    }
    fn minus(&self, rhs: &Self) -> Self {
        self.add_impl(rhs, true)
    }
    fn times(&self, rhs: &Self) -> Self {
        if self.root != rhs.root {
            let root = lcm_u64(self.root, rhs.root);
            return self.with_root(root).times(&rhs.with_root(root));
        }
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return Self::zero_with_root(self.root);
        }
        // Iterate over the sparser operand's nonzero terms.
        let (sparse, dense) = if self.num_terms() <= rhs.num_terms() { (self, rhs) } else { (rhs, self) };
        let mut coeffs = vec![C::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in sparse.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in dense.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let slot = &mut coeffs[i + j];
                *slot = slot.plus(&a.times(b));
            }
        }
        Self::from_dense(self.root, self.low + rhs.low, coeffs)
    }
    fn negate(&self) -> Self {
        Laurent { root: self.root, low: self.low, coeffs: self.coeffs.iter().map(Ring::negate).collect() }
    }
    fn from_rational(r: &Rational) -> Self {
        Self::constant(C::from_rational(r))
    }
    fn scale(&self, r: &Rational) -> Self {
        self.map_coeffs(|c| c.scale(r))
    }
}

impl<C: Ring> PartialEq for Laurent<C> {
    fn eq(&self, other: &Self) -> bool {
        if self.root == other.root {
            return self.low == other.low && self.coeffs == other.coeffs;
        }
        let root = lcm_u64(self.root, other.root);
        let (a, b) = (self.with_root(root), other.with_root(root));
        a.low == b.low && a.coeffs == b.coeffs
    }
}

impl<C: Ring> fmt::Debug for Laurent<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Laurent")
            .field("root", &self.root)
            .field("terms", &self.terms().collect::<Vec<_>>())
            .finish()
    }
}

/// Renders an exponent `e/root` of `var` (`""` for exponent zero).
pub(crate) fn render_power(var: &str, e: i64, root: u64) -> String {
    let r = Rational::new(e.into(), (root as i64).into());
    if num_traits::Zero::is_zero(&r) {
        String::new()
    } else if num_traits::One::is_one(&r) {
        var.to_string()
    } else if r.is_integer() && e > 0 {
        format!("{var}^{}", r.numer())
    } else {
        format!("{var}^({})", render_rational(&r))
    }
}

impl SPoly {
    /// Canonical text: terms by increasing exponent, e.g. `1 + 2*y - y^(3/2)`.
    pub fn render(&self, var: &str) -> String {
        let mut out = String::new();
        for (e, c) in self.terms() {
            let neg = num_traits::Signed::is_negative(c);
            let mag = num_traits::Signed::abs(c);
            let pw = render_power(var, e, self.root);
            let body = if pw.is_empty() {
                render_rational(&mag)
            } else if num_traits::One::is_one(&mag) {
                pw
            } else {
                format!("{}*{}", render_rational(&mag), pw)
            };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&body);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    /// Evaluates at `s = 1`.
    pub fn eval_at_one(&self) -> Rational {
        self.coeffs.iter().fold(<Rational as Ring>::zero(), |acc, c| acc + c)
    }
}

impl fmt::Display for SPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("y"))
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.terms() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let pw = render_power("w", e, self.root);
            if pw.is_empty() {
                write!(f, "({c})")?;
            } else {
                write!(f, "({c})*{pw}")?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}
