//! Truncated power series in `q` over the coefficient tower.

use std::fmt;

use crate::coeff::{Field, Rational, Ring, SFunc};

/// Truncation order of constants built without an explicit order.
///
/// Such series are exact, so mixing them with a truncated series keeps the
/// other operand's order.
pub const EXACT: usize = usize::MAX;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QSeriesError {
    #[error("q^0 coefficient is not invertible")]
    NonUnitLeadingTerm,
    #[error("coefficient index {index} outside 0..={order}")]
    OutOfRange { index: usize, order: usize },
}

/// `sum_{k <= order} c_k q^k`; coefficients past the stored prefix are zero.
#[derive(Clone, Debug)]
pub struct QSeries<C> {
    coeffs: Vec<C>,
    order: usize,
}

impl<C: Ring> QSeries<C> {
    /// Series with the given leading coefficients, truncated at `q^order`.
    pub fn new(mut coeffs: Vec<C>, order: usize) -> Self {
        if order != EXACT {
            coeffs.truncate(order + 1);
        }
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        QSeries { coeffs, order }
    }

    pub fn constant(c: C, order: usize) -> Self {
        Self::new(vec![c], order)
    }

    /// `c q^k`.
    pub fn monomial(c: C, k: usize, order: usize) -> Self {
        let mut coeffs = vec![C::zero(); k];
        coeffs.push(c);
        Self::new(coeffs, order)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Coefficient of `q^k`; zero beyond the stored prefix.
    pub fn coefficient(&self, k: usize) -> C {
        self.coeffs.get(k).cloned().unwrap_or_else(C::zero)
    }

    pub fn coeff_ref(&self, k: usize) -> Option<&C> {
        self.coeffs.get(k)
    }

    /// Coefficients `0..=order` (requires a finite order).
    pub fn coefficients(&self) -> Vec<C> {
        assert!(self.order != EXACT, "exact constants have no finite coefficient list");
        (0..=self.order).map(|k| self.coefficient(k)).collect()
    }

    pub fn truncated(&self, order: usize) -> Self {
        Self::new(self.coeffs.clone(), order.min(self.order))
    }

    pub fn map<D: Ring>(&self, f: impl Fn(&C) -> D) -> QSeries<D> {
        QSeries::new(self.coeffs.iter().map(f).collect(), self.order)
    }

    pub fn try_map<D: Ring, E>(&self, f: impl Fn(&C) -> Result<D, E>) -> Result<QSeries<D>, E> {
        Ok(QSeries::new(self.coeffs.iter().map(f).collect::<Result<_, _>>()?, self.order))
    }

    /// Inverse of a series whose `q^0` coefficient is exactly one; works over any ring.
    pub fn invert_monic(&self) -> Result<Self, QSeriesError> {
        if !self.coefficient(0).is_one() {
            return Err(QSeriesError::NonUnitLeadingTerm);
        }
        Ok(self.invert_with(&C::one()))
    }

    /// Recurrence `b_n = -inv0 * sum_{k=1..n} a_k b_{n-k}`.
    fn invert_with(&self, inv0: &C) -> Self {
        let n = if self.order == EXACT { self.coeffs.len().saturating_sub(1) } else { self.order };
        assert!(self.order != EXACT || self.coeffs.len() <= 1, "inverse of an exact non-constant series is infinite");
        let mut b: Vec<C> = Vec::with_capacity(n + 1);
        b.push(inv0.clone());
        for m in 1..=n {
            let mut acc = C::zero();
            for k in 1..=m.min(self.coeffs.len().saturating_sub(1)) {
                let a = &self.coeffs[k];
                if a.is_zero() || b[m - k].is_zero() {
                    continue;
                }
                acc = acc.plus(&a.times(&b[m - k]));
            }
            b.push(acc.times(inv0).negate());
        }
        Self::new(b, self.order)
    }

    /// Renders one line per power, `q^k: <coefficient>`.
    pub fn render_with(&self, f: impl Fn(&C) -> String) -> String {
        assert!(self.order != EXACT);
        (0..=self.order).map(|k| format!("q^{k}: {}", f(&self.coefficient(k)))).collect::<Vec<_>>().join("\n")
    }
}

impl<C: Field> QSeries<C> {
    /// Multiplicative inverse up to the truncation order.
    pub fn invert(&self) -> Result<Self, QSeriesError> {
        let inv0 = self.coefficient(0).inverse().ok_or(QSeriesError::NonUnitLeadingTerm)?;
        Ok(self.invert_with(&inv0))
    }
}

/// Cauchy product truncated at the smaller order.
pub fn qs_mul<C: Ring>(a: &QSeries<C>, b: &QSeries<C>) -> QSeries<C> {
    a.times(b)
}

/// Inverse series; fails when the `q^0` coefficient is zero.
pub fn qs_invert<C: Field>(a: &QSeries<C>) -> Result<QSeries<C>, QSeriesError> {
    a.invert()
}

/// Exact coefficient of `q^k` for `0 <= k <= order`.
pub fn qs_coefficient<C: Ring>(a: &QSeries<C>, k: usize) -> Result<C, QSeriesError> {
    if k > a.order {
        return Err(QSeriesError::OutOfRange { index: k, order: a.order });
    }
    Ok(a.coefficient(k))
}

impl<C: Ring> Ring for QSeries<C> {
    fn zero() -> Self {
        QSeries { coeffs: Vec::new(), order: EXACT }
    }
    fn one() -> Self {
        QSeries { coeffs: vec![C::one()], order: EXACT }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn plus(&self, rhs: &Self) -> Self {
        let order = self.order.min(rhs.order);
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..len)
            .map(|k| match (self.coeffs.get(k), rhs.coeffs.get(k)) {
                (Some(a), Some(b)) => a.plus(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Self::new(coeffs, order)
    }
    fn minus(&self, rhs: &Self) -> Self {
        self.plus(&rhs.negate())
    }
    fn times(&self, rhs: &Self) -> Self {
        let order = self.order.min(rhs.order);
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return QSeries { coeffs: Vec::new(), order };
        }
        let mut len = self.coeffs.len() + rhs.coeffs.len() - 1;
        if order != EXACT {
            len = len.min(order + 1);
        }
        let mut coeffs = vec![C::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] = coeffs[i + j].plus(&a.times(b));
            }
        }
        Self::new(coeffs, order)
    }
    fn negate(&self) -> Self {
        QSeries { coeffs: self.coeffs.iter().map(Ring::negate).collect(), order: self.order }
    }
    fn from_rational(r: &Rational) -> Self {
        Self::new(vec![C::from_rational(r)], EXACT)
    }
    fn scale(&self, r: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.scale(r)).collect(), self.order)
    }
}

impl<C: Ring> PartialEq for QSeries<C> {
    /// Coefficientwise equality up to the smaller truncation order.
    fn eq(&self, other: &Self) -> bool {
        let order = self.order.min(other.order);
        let len = self.coeffs.len().max(other.coeffs.len());
        let upto = if order == EXACT { len } else { len.min(order + 1) };
        (0..upto).all(|k| self.coefficient(k) == other.coefficient(k))
    }
}

impl QSeries<SFunc> {
    /// Canonical rendering, one line per `q`-power.
    pub fn render(&self) -> String {
        self.render_with(SFunc::render)
    }
}

impl fmt::Display for QSeries<SFunc> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}
