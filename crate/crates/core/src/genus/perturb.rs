//! Genus with coefficients `a_i + eps b_i`, realized exactly through `w = y^eps`.

use crate::coeff::{rat, BiPoly, BinomFrac, RFunc, SFunc, SPoly};
use crate::qseries::QSeries;
use crate::surface::{Coeffs, SurfaceModel};
use crate::theta::divisor_factor;

use super::{naive_integral, GenusError};

fn perturbed_binom(model: &SurfaceModel, coeffs: &Coeffs, b: &Coeffs, order: usize) -> Result<QSeries<BinomFrac<BiPoly>>, GenusError> {
    let a = model.coeff_vector(coeffs)?;
    let mut factors = Vec::with_capacity(a.len());
    for (curve, a) in model.curves().iter().zip(&a) {
        let beta = b.get(&curve.label).cloned().unwrap_or_else(|| rat(0));
        if *a == rat(-1) && beta == rat(0) {
            return Err(GenusError::InvalidPerturbation(format!("{} has coefficient -1 and no perturbation", curve.label)));
        }
        factors.push(divisor_factor::<BiPoly>(a, &beta, order)?);
    }
    let refs: Vec<_> = factors.iter().enumerate().collect();
    Ok(naive_integral(model, &refs, order))
}

/// Perturbed genus as a series of rational functions in `w^(1/root)`.
///
/// Every coefficient goes through a gcd over `Q(s)`, so this is meant for small inputs.
pub fn perturbed_ell(model: &SurfaceModel, coeffs: &Coeffs, b: &Coeffs, order: usize) -> Result<QSeries<RFunc>, GenusError> {
    Ok(perturbed_binom(model, coeffs, b, order)?.map(RFunc::from_binom))
}

/// Limit `eps -> 0` before canonicalization.
pub fn perturbed_limit_binom(model: &SurfaceModel, coeffs: &Coeffs, b: &Coeffs, order: usize) -> Result<QSeries<BinomFrac<SPoly>>, GenusError> {
    Ok(perturbed_binom(model, coeffs, b, order)?.try_map(BinomFrac::limit_w1)?)
}

/// `lim_{eps -> 0}` of the perturbed genus; [`crate::coeff::CoeffError::PoleAtOne`] if it does not exist.
pub fn perturbed_limit(model: &SurfaceModel, coeffs: &Coeffs, b: &Coeffs, order: usize) -> Result<QSeries<SFunc>, GenusError> {
    Ok(perturbed_limit_binom(model, coeffs, b, order)?.map(BinomFrac::to_sfunc))
}
