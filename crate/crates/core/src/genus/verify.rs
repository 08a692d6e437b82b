//! Executable checks: blow-up invariance, residue identities, holomorphy.

use std::fmt;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::coeff::{rat, sfunc_eval_at_s1, Rational, Ring, SFunc};
use crate::graph::Interpretation;
use crate::qseries::QSeries;
use crate::surface::{blowup, Coeffs, PointSpec, SurfaceError, SurfaceModel};
use crate::theta::{numeric_residue, phi_correction, theta_numeric, theta_prime_zero, ThetaError, DEFAULT_TOL};

use super::{ell, ell_numeric, GenusError, GenusResult};

/// Kind of blow-up center, by the coefficients of the curves through it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BlowupCase {
    /// Node of two `-1` curves.
    Case1,
    /// Point on a `-1` curve, possibly a node with a curve of coefficient `a`.
    Case2 { a: Rational },
    /// Node of curves with `a1 + a2 = -2`.
    Case3 { a1: Rational, a2: Rational },
    /// Point on a single curve with coefficient `-2`.
    Case4,
    /// Everything else.
    Case5,
}

impl BlowupCase {
    pub fn number(&self) -> u8 {
        match self {
            BlowupCase::Case1 => 1,
            BlowupCase::Case2 { .. } => 2,
            BlowupCase::Case3 { .. } => 3,
            BlowupCase::Case4 => 4,
            BlowupCase::Case5 => 5,
        }
    }

    /// `Ell_nv(after) - Ell_nv(before)` predicted by the residue computations.
    pub fn naive_change(&self, order: usize) -> Result<QSeries<SFunc>, ThetaError> {
        let phi = |a: &Rational| phi_correction(a, order).map(|s| s.negate());
        match self {
            BlowupCase::Case1 => phi(&rat(1)),
            BlowupCase::Case2 { a } => phi(a),
            BlowupCase::Case3 { a1, .. } => phi(a1),
            BlowupCase::Case4 | BlowupCase::Case5 => Ok(QSeries::new(Vec::new(), order)),
        }
    }
}

impl fmt::Display for BlowupCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CASE{}", self.number())
    }
}

/// Classifies a blow-up center.
pub fn classify_point(model: &SurfaceModel, coeffs: &Coeffs, p: &PointSpec) -> Result<BlowupCase, GenusError> {
    let coeff = |l: &str| -> Result<Rational, SurfaceError> {
        model.index_of(l).ok_or_else(|| SurfaceError::InvalidPoint(format!("unknown curve {l}")))?;
        coeffs.get(l).cloned().ok_or_else(|| SurfaceError::MissingCoefficient(l.to_string()))
    };
    let m1 = rat(-1);
    Ok(match p {
        PointSpec::Generic => BlowupCase::Case5,
        PointSpec::OnCurve(l) => {
            let a = coeff(l)?;
            if a == m1 {
                BlowupCase::Case2 { a: rat(0) }
            } else if a == rat(-2) {
                BlowupCase::Case4
            } else {
                BlowupCase::Case5
            }
        }
        PointSpec::Node(l1, l2) => {
            let (a1, a2) = (coeff(l1)?, coeff(l2)?);
            if a1 == m1 && a2 == m1 {
                BlowupCase::Case1
            } else if a1 == m1 {
                BlowupCase::Case2 { a: a2 }
            } else if a2 == m1 {
                BlowupCase::Case2 { a: a1 }
            } else if &a1 + &a2 == rat(-2) {
                BlowupCase::Case3 { a1, a2 }
            } else {
                BlowupCase::Case5
            }
        }
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct InvarianceReport {
    pub point: PointSpec,
    pub case: BlowupCase,
    pub equal: bool,
    /// First `q`-power where the two genera differ.
    pub first_difference: Option<usize>,
    /// Whether `Ell_nv` changed exactly as the residue computation predicts.
    pub naive_change_matches: bool,
    pub before: GenusResult,
    pub after: GenusResult,
    pub blown_up: (SurfaceModel, Coeffs),
}

fn first_difference(a: &QSeries<SFunc>, b: &QSeries<SFunc>) -> Option<usize> {
    (0..=a.order().min(b.order())).find(|&k| a.coefficient(k) != b.coefficient(k))
}

/// Computes `Ell` before and after blowing up `p` and compares them exactly.
pub fn verify_blowup_invariance(
    model: &SurfaceModel,
    coeffs: &Coeffs,
    p: &PointSpec,
    order: usize,
    flags: &Interpretation,
) -> Result<InvarianceReport, GenusError> {
    let before = ell(model, coeffs, order, flags)?;
    compare_blowup(model, coeffs, &before, p)
}

/// [`verify_blowup_invariance`] at every point of [`SurfaceModel::point_specs`],
/// in that order, computing the unblown genus once.
pub fn verify_blowup_invariance_all(
    model: &SurfaceModel,
    coeffs: &Coeffs,
    order: usize,
    flags: &Interpretation,
) -> Result<Vec<InvarianceReport>, GenusError> {
    let before = ell(model, coeffs, order, flags)?;
    model.point_specs().par_iter().map(|p| compare_blowup(model, coeffs, &before, p)).collect()
}

fn compare_blowup(model: &SurfaceModel, coeffs: &Coeffs, before: &GenusResult, p: &PointSpec) -> Result<InvarianceReport, GenusError> {
    let case = classify_point(model, coeffs, p)?;
    let (m2, c2) = blowup(model, coeffs, p)?;
    let after = ell(&m2, &c2, before.order, &before.flags)?;
    let diff = first_difference(&before.series, &after.series);
    let naive_change = after.naive.minus(&before.naive);
    Ok(InvarianceReport {
        point: p.clone(),
        naive_change_matches: naive_change == case.naive_change(before.order)?,
        case,
        equal: diff.is_none(),
        first_difference: diff,
        before: before.clone(),
        after,
        blown_up: (m2, c2),
    })
}

/// Residue identities of the blow-up computations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ResidueCase {
    One,
    Two { a: f64 },
    Three { a1: f64, a2: f64 },
    Four,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResidueReport {
    pub case: ResidueCase,
    pub residue: Complex64,
    pub expected: Complex64,
    pub error: f64,
    pub tolerance: f64,
    pub pass: bool,
}

/// Contour residue at `t = 0` of the CASE's `F(t)` against its closed form.
pub fn verify_residue_case(case: ResidueCase, z: Complex64, tau: Complex64) -> Result<ResidueReport, ThetaError> {
    let th = |t: Complex64| theta_numeric(t, tau, DEFAULT_TOL).expect("tau checked");
    let tp = theta_prime_zero(tau, DEFAULT_TOL)?;
    // theta(t + u z) theta'(0) / (theta(t) theta(u z))
    let tangent = move |t: Complex64, u: f64| th(t + u * z) * tp / (th(t) * th(u * z));
    // theta(t + u z) theta(z) / (theta(t + v z) theta(u z))
    let ratio = move |t: Complex64, u: f64, v: f64| th(t + u * z) * th(z) / (th(t + v * z) * th(u * z));
    let common = move |t: Complex64| tangent(t, 1.0).powi(2) * tangent(t, -1.0);
    let phi = |a: f64| th((a + 2.0) * z) * th(a * z) / (th((a + 1.0) * z) * th((a + 1.0) * z));
    let (f, expected): (Box<dyn Fn(Complex64) -> Complex64>, Complex64) = match case {
        ResidueCase::One => (
            Box::new(move |t| {
                tangent(t, 1.0) * tangent(t, 2.0) * tangent(t, -2.0) * th(t - 2.0 * z) * th(z) / (th(t - z) * th(2.0 * z))
            }),
            (tp / th(z)).powi(2) * phi(1.0),
        ),
        ResidueCase::Two { a } => (
            Box::new(move |t| {
                common(t)
                    * (th(-t + 2.0 * z) * th(z) / (th(-t + z) * th(2.0 * z)))
                    * ratio(t, a + 1.0, 1.0)
                    * (th(t - (a + 1.0) * z) * th(z) / (th(t - z) * th((a + 1.0) * z)))
            }),
            phi(a) * (tp / th(z)).powi(2),
        ),
        ResidueCase::Three { a1, a2 } => (
            Box::new(move |t| common(t) * ratio(t, 2.0, 1.0) * ratio(t, a1 + 1.0, 1.0) * ratio(t, a2 + 1.0, 1.0)),
            [a1, a2].iter().map(|&a| th(a * z) * tp / (th((1.0 + a) * z) * th(z))).product(),
        ),
        ResidueCase::Four => (
            Box::new(move |t| common(t) * ratio(t, 2.0, 1.0) * (th(t - z) * th(z) / (th(t + z) * th(-z)))),
            Complex64::new(0.0, 0.0),
        ),
    };
    let radius = (z.norm() / 3.0).min(0.05);
    let residue = numeric_residue(f, Complex64::new(0.0, 0.0), radius, 256);
    let error = (residue - expected).norm();
    let tolerance = if case == ResidueCase::Four { 1e-8 } else { 1e-7 };
    Ok(ResidueReport { case, residue, expected, error, tolerance, pass: error < tolerance })
}

#[derive(Debug, Clone, PartialEq)]
pub struct HolomorphyReport {
    /// First `q`-power whose coefficient has a pole at `y = 1`.
    pub pole_at_z0: Option<usize>,
    /// `(delta, |theta(2z) Ell(z)|)` at `z = tau/2 + delta`.
    pub approach: Vec<(f64, f64)>,
    /// Each step of the approach shrinks the value at least tenfold.
    pub decays: bool,
}

impl HolomorphyReport {
    pub fn pass(&self) -> bool {
        self.pole_at_z0.is_none() && self.decays
    }
}

/// Approach offsets used by [`verify_holomorphy`].
pub const APPROACH: [f64; 3] = [1e-2, 1e-3, 1e-4];

/// Regularity at `z = 0` per coefficient, and decay of `theta(2z) Ell` as `z -> tau/2`.
pub fn verify_holomorphy(model: &SurfaceModel, res: &GenusResult, tau: Complex64) -> Result<HolomorphyReport, GenusError> {
    let pole_at_z0 = (0..=res.order).find(|&k| sfunc_eval_at_s1(&res.series.coefficient(k)).is_err());
    let mut approach = Vec::new();
    for d in APPROACH {
        let z = tau / 2.0 + d;
        let e = ell_numeric(model, &res.coeffs, &res.flags, z, tau)?;
        approach.push((d, (theta_numeric(2.0 * z, tau, DEFAULT_TOL)? * e).norm()));
    }
    let decays = approach.windows(2).all(|w| w[1].1 * 10.0 <= w[0].1);
    Ok(HolomorphyReport { pole_at_z0, approach, decays })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn residue_cases() {
        let (z, tau) = (c(0.17, 0.05), c(0.0, 0.8));
        for case in [ResidueCase::One, ResidueCase::Two { a: 0.7 }, ResidueCase::Three { a1: -3.0, a2: 1.0 }, ResidueCase::Four] {
            let r = verify_residue_case(case, z, tau).unwrap();
            assert!(r.pass, "{r:?}");
        }
    }

    #[test]
    fn classification() {
        use crate::surface::Curve;
        let model = SurfaceModel::new(
            vec![Curve::new("A", 0, -2, true), Curve::new("B", 0, -2, true)],
            vec![vec![0, 1], vec![1, 0]],
            0,
            0,
        )
        .unwrap();
        let co = |a: i64, b: i64| Coeffs::from([("A".to_string(), rat(a)), ("B".to_string(), rat(b))]);
        let node = PointSpec::Node("A".into(), "B".into());
        assert_eq!(classify_point(&model, &co(-1, -1), &node).unwrap(), BlowupCase::Case1);
        assert_eq!(classify_point(&model, &co(-1, 2), &node).unwrap(), BlowupCase::Case2 { a: rat(2) });
        assert_eq!(classify_point(&model, &co(-3, 1), &node).unwrap(), BlowupCase::Case3 { a1: rat(-3), a2: rat(1) });
        assert_eq!(classify_point(&model, &co(-2, 0), &PointSpec::OnCurve("A".into())).unwrap(), BlowupCase::Case4);
        assert_eq!(classify_point(&model, &co(0, 0), &node).unwrap(), BlowupCase::Case5);
        assert_eq!(classify_point(&model, &co(0, 0), &PointSpec::Generic).unwrap(), BlowupCase::Case5);
    }
}
