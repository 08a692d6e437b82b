//! Double-precision theta functions, exact-series evaluation and contour residues.

use std::f64::consts::PI;

use num_complex::Complex64;
use num_traits::ToPrimitive;

use crate::coeff::{BinomFrac, Laurent, Rational, SFunc, SPoly};
use crate::qseries::QSeries;

use super::{DExp, ThetaError};

/// Products stop once `|q|^n` drops below this bound.
pub const DEFAULT_TOL: f64 = 1e-18;

const I: Complex64 = Complex64::new(0.0, 1.0);

fn nome(tau: Complex64) -> Result<Complex64, ThetaError> {
    if tau.im <= 0.0 {
        return Err(ThetaError::InvalidTau);
    }
    Ok((2.0 * PI * I * tau).exp())
}

/// Number of product factors kept: the first `n` with `|q|^n < tol` is dropped.
fn factor_count(q: Complex64, tol: f64) -> usize {
    let aq = q.norm();
    let mut n = 1;
    let mut p = aq;
    while p >= tol && n < 10_000 {
        n += 1;
        p *= aq;
    }
    n - 1
}

/// `theta(t, tau) = q^(1/8) 2 sin(pi t) prod (1 - q^n)(1 - q^n e^(2 pi i t))(1 - q^n e^(-2 pi i t))`.
pub fn theta_numeric(t: Complex64, tau: Complex64, tol: f64) -> Result<Complex64, ThetaError> {
    let q = nome(tau)?;
    let e = (2.0 * PI * I * t).exp();
    let mut acc = (2.0 * PI * I * tau / 8.0).exp() * 2.0 * (PI * t).sin();
    let mut qn = Complex64::new(1.0, 0.0);
    for _ in 0..factor_count(q, tol) {
        qn *= q;
        acc *= (1.0 - qn) * (1.0 - qn * e) * (1.0 - qn / e);
    }
    Ok(acc)
}

/// `theta'(0, tau) = 2 pi q^(1/8) prod (1 - q^n)^3`.
pub fn theta_prime_zero(tau: Complex64, tol: f64) -> Result<Complex64, ThetaError> {
    let q = nome(tau)?;
    let mut acc = 2.0 * PI * (2.0 * PI * I * tau / 8.0).exp();
    let mut qn = Complex64::new(1.0, 0.0);
    for _ in 0..factor_count(q, tol) {
        qn *= q;
        acc *= (1.0 - qn).powi(3);
    }
    Ok(acc)
}

/// Normalized `sigma(t) = (v^(1/2) - v^(-1/2)) prod (1 - q^n v)(1 - q^n / v) / (1 - q^n)^2`.
pub fn sigma_numeric(t: Complex64, tau: Complex64, tol: f64) -> Result<Complex64, ThetaError> {
    let q = nome(tau)?;
    let v = (2.0 * PI * I * t).exp();
    let mut acc = (PI * I * t).exp() - (-PI * I * t).exp();
    let mut qn = Complex64::new(1.0, 0.0);
    for _ in 0..factor_count(q, tol) {
        qn *= q;
        acc *= (1.0 - qn * v) * (1.0 - qn / v) / ((1.0 - qn) * (1.0 - qn));
    }
    Ok(acc)
}

/// Translation and modular identities of `theta`, as `(name, |lhs - rhs|)`.
///
/// `theta(t + 1) = -theta(t)`, `theta(t + tau) = -q^(-1/2) e^(-2 pi i t) theta(t)`,
/// `theta(t, tau + 1) = e^(i pi / 4) theta(t, tau)` and
/// `theta(t / tau, -1 / tau) = (1 / i) sqrt(tau / i) e^(i pi t^2 / tau) theta(t, tau)`.
pub fn theta_identity_residuals(t: Complex64, tau: Complex64, tol: f64) -> Result<[(&'static str, f64); 4], ThetaError> {
    let th = |t: Complex64, tau: Complex64| theta_numeric(t, tau, tol);
    let base = th(t, tau)?;
    let q = nome(tau)?;
    let shift_one = (th(t + 1.0, tau)? + base).norm();
    let shift_tau = (th(t + tau, tau)? + q.powf(-0.5) * (-2.0 * PI * I * t).exp() * base).norm();
    let modular_t = (th(t, tau + 1.0)? - (I * PI / 4.0).exp() * base).norm();
    let s_rhs = (1.0 / I) * (tau / I).sqrt() * (I * PI * t * t / tau).exp() * base;
    let modular_s = (th(t / tau, -1.0 / tau)? - s_rhs).norm();
    Ok([("translation-1", shift_one), ("translation-tau", shift_tau), ("modular-T", modular_t), ("modular-S", modular_s)])
}

/// Floating-point scalars for the numeric route; equality is exact bitwise equality.
impl crate::coeff::Ring for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn is_zero(&self) -> bool {
        *self == Complex64::new(0.0, 0.0)
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
        Complex64::new(to_f64(r), 0.0)
    }
}

/// Inverse of a jet with nonzero constant term.
pub fn jet_inverse(j: &DExp<Complex64>) -> DExp<Complex64> {
    let [c0, c1, c2] = j.0;
    DExp([1.0 / c0, -c1 / (c0 * c0), (c1 * c1 - c0 * c2) / (c0 * c0 * c0)])
}

/// `e^(x X) = 1 + x X + x^2 X^2 / 2` scaled by `c`.
fn exp_jet(c: Complex64, x: f64) -> DExp<Complex64> {
    DExp([c, c * x, c * (x * x / 2.0)])
}

/// `P(v)` at `v = e^(2 pi i b z) e^(x X)` as a jet in `X`.
pub fn p_jet(b: f64, x: f64, z: Complex64, tau: Complex64, tol: f64) -> Result<DExp<Complex64>, ThetaError> {
    use crate::coeff::Ring;
    let q = nome(tau)?;
    let v0 = (2.0 * PI * I * b * z).exp();
    let v = exp_jet(v0, x);
    let v_inv = exp_jet(1.0 / v0, -x);
    let one = DExp::<Complex64>::one();
    let mut acc = one.clone();
    let mut qn = Complex64::new(1.0, 0.0);
    for _ in 0..factor_count(q, tol) {
        qn *= q;
        let f = one.minus(&v.map(|c| c * qn)).times(&one.minus(&v_inv.map(|c| c * qn)));
        acc = acc.times(&f).map(|c| c / ((1.0 - qn) * (1.0 - qn)));
    }
    Ok(acc)
}

/// `v^(1/2) - v^(-1/2)` at `v = e^(2 pi i b z) e^(x X)`.
pub fn leading_jet(b: f64, x: f64, z: Complex64) -> DExp<Complex64> {
    use crate::coeff::Ring;
    let h = (PI * I * b * z).exp();
    exp_jet(h, x / 2.0).minus(&exp_jet(1.0 / h, -x / 2.0))
}

/// `sigma(X / 2 pi i + b z)` as a jet in `X`, with `x` scaling the shift.
pub fn sigma_jet(b: f64, x: f64, z: Complex64, tau: Complex64, tol: f64) -> Result<DExp<Complex64>, ThetaError> {
    use crate::coeff::Ring;
    Ok(leading_jet(b, x, z).times(&p_jet(b, x, z, tau, tol)?))
}

/// `(1 / 2 pi i)` times the contour integral over a circle, by the trapezoid rule.
pub fn numeric_residue(f: impl Fn(Complex64) -> Complex64, center: Complex64, radius: f64, samples: usize) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 0..samples {
        let u = (2.0 * PI * I * (k as f64) / samples as f64).exp();
        acc += f(center + radius * u) * radius * u;
    }
    acc / samples as f64
}

fn to_f64(r: &Rational) -> f64 {
    r.to_f64().expect("finite rational")
}

/// Value of a Laurent polynomial in `y^(1/root)` at `y = e^(2 pi i z)`.
pub fn eval_spoly(p: &SPoly, z: Complex64) -> Complex64 {
    let root = p.root() as f64;
    p.terms().map(|(e, c)| to_f64(c) * (2.0 * PI * I * z * (e as f64 / root)).exp()).sum()
}

pub fn eval_sfunc(f: &SFunc, z: Complex64) -> Complex64 {
    eval_spoly(f.numerator(), z) / eval_spoly(f.denominator(), z)
}

pub fn eval_binom(f: &BinomFrac<SPoly>, z: Complex64) -> Complex64 {
    eval_spoly(f.numerator(), z) / eval_spoly(&f.den_expanded(), z)
}

/// `sum_k c_k(z) q^k` at `q = e^(2 pi i tau)`.
pub fn eval_series<C>(s: &QSeries<C>, eval: impl Fn(&C) -> Complex64, tau: Complex64) -> Result<Complex64, ThetaError>
where
    C: crate::coeff::Ring,
{
    let q = nome(tau)?;
    let mut acc = Complex64::new(0.0, 0.0);
    let mut qk = Complex64::new(1.0, 0.0);
    for k in 0..=s.order() {
        if let Some(c) = s.coeff_ref(k) {
            acc += eval(c) * qk;
        }
        qk *= q;
    }
    Ok(acc)
}

/// Exact series of `sigma` evaluated at `(z, tau)`.
pub fn eval_sigma_series(s: &QSeries<SPoly>, z: Complex64, tau: Complex64) -> Result<Complex64, ThetaError> {
    eval_series(s, |c: &Laurent<Rational>| eval_spoly(c, z), tau)
}
