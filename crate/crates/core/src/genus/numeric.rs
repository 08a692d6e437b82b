//! Floating-point genus built from theta jets, independent of the exact series code.

use num_complex::Complex64;
use num_traits::ToPrimitive;

use crate::coeff::{rat, Rational, Ring};
use crate::graph::{Interpretation, ResolutionGraph};
use crate::surface::{Coeffs, Graded, SurfaceModel};
use crate::theta::{jet_inverse, p_jet, sigma_jet, sigma_numeric, DExp, ThetaError, DEFAULT_TOL};

use super::{correction_weights, GenusError};

fn f(r: &Rational) -> f64 {
    r.to_f64().expect("finite rational")
}

/// `prod sigma(num) / prod sigma(den)` for jet arguments `(b, x)`.
fn jet_ratio(num: &[(f64, f64)], den: &[(f64, f64)], z: Complex64, tau: Complex64) -> Result<DExp<Complex64>, ThetaError> {
    let mut acc = DExp::<Complex64>::one();
    for &(b, x) in num {
        acc = acc.times(&sigma_jet(b, x, z, tau, DEFAULT_TOL)?);
    }
    for &(b, x) in den {
        acc = acc.times(&jet_inverse(&sigma_jet(b, x, z, tau, DEFAULT_TOL)?));
    }
    Ok(acc)
}

/// `phi(a)` at numeric `(z, tau)`.
pub fn phi_numeric(a: &Rational, z: Complex64, tau: Complex64) -> Result<Complex64, GenusError> {
    if *a == rat(-1) {
        return Err(ThetaError::LogCanonicalPole.into());
    }
    let s = |b: f64| sigma_numeric(b * z, tau, DEFAULT_TOL);
    let a = f(a);
    Ok(s(a + 2.0)? * s(a)? / (s(a + 1.0)? * s(a + 1.0)?))
}

/// `Ell(X, C)` at numeric `(z, tau)`.
pub fn ell_numeric(
    model: &SurfaceModel,
    coeffs: &Coeffs,
    flags: &Interpretation,
    z: Complex64,
    tau: Complex64,
) -> Result<Complex64, GenusError> {
    let n = model.len();
    let form = model.intersection_form();
    // W / (e^(W/2) - e^(-W/2)) = 1 - W^2/24, so W sigma(W - z)/sigma(W) needs only P at e^W.
    let w_over_l = DExp([Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0), Complex64::new(-1.0 / 24.0, 0.0)]);
    let phi = sigma_jet(-1.0, 1.0, z, tau, DEFAULT_TOL)?
        .times(&w_over_l)
        .times(&jet_inverse(&p_jet(0.0, 1.0, z, tau, DEFAULT_TOL)?));
    let [p0, p1, p2] = phi.0;
    let mut g = Graded::scalar(p0 * p0, n + 1);
    g.deg1[n] = -p0 * p1;
    let c2 = model.c2() as f64;
    g.deg2 = p1 * p1 * c2 + p0 * p2 * (model.c1sq() as f64 - 2.0 * c2);
    for (i, a) in model.coeff_vector(coeffs)?.iter().enumerate() {
        let jet = if *a == rat(-1) {
            jet_ratio(&[(2.0, 1.0), (1.0, 0.0)], &[(1.0, 1.0), (2.0, 0.0)], z, tau)?
        } else {
            let b = f(a) + 1.0;
            jet_ratio(&[(-b, 1.0), (1.0, 0.0)], &[(-1.0, 1.0), (b, 0.0)], z, tau)?
        };
        let mut factor = Graded::divisor(i, jet.0[1], n + 1);
        factor.deg0 = jet.0[0];
        factor.deg2 = jet.0[2] * form.get(i, i) as f64;
        g = g.mul(&factor, &form);
    }
    let graph = ResolutionGraph::from_model(model, coeffs)?;
    let mut total = g.integrate();
    for (a, w) in correction_weights(&graph, flags) {
        total += phi_numeric(&a, z, tau)? * f(&w);
    }
    Ok(total)
}
