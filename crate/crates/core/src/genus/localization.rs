//! Fixed-point evaluation of the genus of `(P^1, a1 p1 + a2 p2)` under the standard circle action.
//!
//! With equivariant parameter `t`, the fixed points have tangent weights `t`
//! and `-t`, and each contributes
//! `theta(w - (a+1)z) theta(z) / (theta(w) theta((a+1)z))` at its weight `w`.

use num_complex::Complex64;

use crate::coeff::{rat, ratio, BinomFrac, Rational, Ring, SFunc, SPoly};
use crate::qseries::QSeries;
use crate::theta::{theta_numeric, theta_ratio, SigmaArg, ThetaError, DEFAULT_TOL};

use super::GenusError;

fn check(a1: &Rational, a2: &Rational) -> Result<(), GenusError> {
    if *a1 == rat(-1) || *a2 == rat(-1) {
        return Err(ThetaError::LogCanonicalPole.into());
    }
    Ok(())
}

/// Two-fixed-point sum at numeric `(t, z, tau)`.
pub fn localization_p1(a1: &Rational, a2: &Rational, t: Complex64, z: Complex64, tau: Complex64) -> Result<Complex64, GenusError> {
    check(a1, a2)?;
    let th = |x: Complex64| theta_numeric(x, tau, DEFAULT_TOL);
    let term = |w: Complex64, a: &Rational| -> Result<Complex64, ThetaError> {
        let b = num_traits::ToPrimitive::to_f64(&(a + rat(1))).unwrap();
        Ok(th(w - b * z)? * th(z)? / (th(w)? * th(b * z)?))
    };
    Ok(term(t, a1)? + term(-t, a2)?)
}

/// The sum as printed with `theta(w - z)` in place of the tangent factor `theta(w)`.
///
/// Kept to show that this form does not vanish for `a1 + a2 = -2`.
pub fn localization_p1_literal(a1: &Rational, a2: &Rational, t: Complex64, z: Complex64, tau: Complex64) -> Result<Complex64, GenusError> {
    check(a1, a2)?;
    let th = |x: Complex64| theta_numeric(x, tau, DEFAULT_TOL);
    let term = |w: Complex64, a: &Rational| -> Result<Complex64, ThetaError> {
        let b = num_traits::ToPrimitive::to_f64(&(a + rat(1))).unwrap();
        Ok(th(w - b * z)? * th(z)? / (th(w - z)? * th(b * z)?))
    };
    Ok(term(t, a1)? + term(-t, a2)?)
}

/// Exact sum with `e^(2 pi i t) = y^c`.
fn specialized(a1: &Rational, a2: &Rational, c: &Rational, order: usize) -> Result<QSeries<SFunc>, GenusError> {
    let mut acc: QSeries<BinomFrac<SPoly>> = QSeries::new(Vec::new(), order);
    for (w, a) in [(c.clone(), a1), (-c.clone(), a2)] {
        let b = a + rat(1);
        let num = [SigmaArg::pure(&w - &b), SigmaArg::pure(rat(1))];
        let den = [SigmaArg::pure(w), SigmaArg::pure(b)];
        acc = acc.plus(&theta_ratio::<SPoly>(&num, &den, order)?.map(|x| x.0[0].clone()));
    }
    Ok(acc.map(BinomFrac::to_sfunc))
}

/// Exact genus of `(P^1, a1 p1 + a2 p2)`.
///
/// The equivariant parameter is specialized at two unrelated values; if the
/// results differ the sum is not a genus and [`GenusError::TDependence`] is returned.
pub fn localization_p1_exact(a1: &Rational, a2: &Rational, order: usize) -> Result<QSeries<SFunc>, GenusError> {
    check(a1, a2)?;
    let first = specialized(a1, a2, &ratio(1, 7), order)?;
    let second = specialized(a1, a2, &ratio(3, 11), order)?;
    if first != second {
        return Err(GenusError::TDependence);
    }
    Ok(first)
}
