//! Singular elliptic genus of a pair `(X, C)` and its oracles.
//!
//! `Ell = Ell_nv + correction`, where `Ell_nv` integrates theta factors over
//! `X` and the correction is a weighted sum of
//! `phi(a) = sigma((a+2)z) sigma(a z) / sigma((a+1)z)^2` read off the resolution graph.

pub mod corpus;
mod localization;
mod numeric;
mod perturb;
mod verify;
mod veys;

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use crate::coeff::{rat, BinomFrac, CoeffError, ExpRing, Rational, Ring, SFunc, SPoly};
use crate::graph::{combinatorial_sets, is_bridge, CorrectionMode, Interpretation, ResolutionGraph};
use crate::qseries::QSeries;
use crate::surface::{solve_discrepancies_with, Coeffs, Graded, SurfaceError, SurfaceModel};
use crate::theta::{chern_genus_coeffs, divisor_factor, minus_one_factor, phi_binom, DExp, ThetaError};

pub use localization::{localization_p1, localization_p1_exact, localization_p1_literal};
pub use numeric::{ell_numeric, phi_numeric};
pub use perturb::{perturbed_ell, perturbed_limit, perturbed_limit_binom};
pub use verify::{
    classify_point, verify_blowup_invariance, verify_blowup_invariance_all, verify_holomorphy, verify_residue_case, BlowupCase, HolomorphyReport,
    InvarianceReport, ResidueCase, ResidueReport,
};
pub use veys::{hirzebruch_chi_y, veys_chi_y, AmbientE};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GenusError {
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error(transparent)]
    Theta(#[from] ThetaError),
    #[error(transparent)]
    Coeff(#[from] CoeffError),
    #[error("Veys hypothesis violated: {0}")]
    VeysHypothesisViolated(String),
    #[error("localization sum depends on the equivariant parameter")]
    TDependence,
    #[error("invalid perturbation: {0}")]
    InvalidPerturbation(String),
}

/// A computed genus with the data it was computed from.
#[derive(Debug, Clone, PartialEq)]
pub struct GenusResult {
    pub series: QSeries<SFunc>,
    pub naive: QSeries<SFunc>,
    pub correction: QSeries<SFunc>,
    pub coeffs: Coeffs,
    pub order: usize,
    pub flags: Interpretation,
}

impl GenusResult {
    /// Smallest `2N` such that every coefficient lives in `y^(1/(2N))`.
    pub fn root_order(&self) -> u64 {
        (0..=self.order).fold(2, |acc, k| num_integer::lcm(acc, self.series.coefficient(k).root_order()))
    }
}

type Factor<R> = QSeries<DExp<BinomFrac<R>>>;

/// Cached unperturbed factor for a curve with coefficient `a`.
fn curve_factor(a: &Rational, order: usize) -> Result<Arc<Factor<SPoly>>, ThetaError> {
    static CACHE: OnceLock<Mutex<HashMap<(Rational, usize), Arc<Factor<SPoly>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(f) = cache.lock().unwrap().get(&(a.clone(), order)) {
        return Ok(f.clone());
    }
    let f = if *a == rat(-1) { minus_one_factor(order) } else { divisor_factor(a, &rat(0), order)? };
    let f = Arc::new(f);
    cache.lock().unwrap().insert((a.clone(), order), f.clone());
    Ok(f)
}

fn cached_phi(a: &Rational, order: usize) -> Result<Arc<QSeries<BinomFrac<SPoly>>>, ThetaError> {
    static CACHE: OnceLock<Mutex<HashMap<(Rational, usize), Arc<QSeries<BinomFrac<SPoly>>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(f) = cache.lock().unwrap().get(&(a.clone(), order)) {
        return Ok(f.clone());
    }
    let f = Arc::new(phi_binom(a, order)?);
    cache.lock().unwrap().insert((a.clone(), order), f.clone());
    Ok(f)
}

/// Smooth integrand `Phi0^2 + Phi0 Phi1 c1 + Phi1^2 c2 + Phi0 Phi2 (c1^2 - 2 c2)` with `c1 = -K`.
fn chern_class<R: ExpRing>(model: &SurfaceModel, order: usize) -> Graded<QSeries<BinomFrac<R>>> {
    let [p0, p1, p2] = chern_genus_coeffs::<R>(order).map(|s| s.map(|c| BinomFrac::from_num(c.clone())));
    let dim = model.len() + 1;
    let mut g = Graded::scalar(p0.times(&p0), dim);
    g.deg1[model.len()] = p0.times(&p1).negate();
    let c2 = rat(model.c2());
    g.deg2 = p1.times(&p1).scale(&c2).plus(&p0.times(&p2).scale(&(rat(model.c1sq()) - rat(2) * &c2)));
    g
}

/// Integral over `X` of the smooth integrand times `1 + f1 C_i + f2 C_i^2` per listed curve.
pub(crate) fn naive_integral<R: ExpRing>(
    model: &SurfaceModel,
    factors: &[(usize, &Factor<R>)],
    order: usize,
) -> QSeries<BinomFrac<R>> {
    let form = model.intersection_form();
    let mut g = chern_class::<R>(model, order);
    for (i, f) in factors {
        let f1 = f.map(|c| c.0[1].clone());
        let f2 = f.map(|c| c.0[2].clone());
        g = g.mul_unit_factor(*i, &f1, &f2, &form);
    }
    g.integrate()
}

fn naive_binom(model: &SurfaceModel, coeffs: &Coeffs, order: usize) -> Result<QSeries<BinomFrac<SPoly>>, GenusError> {
    let a = model.coeff_vector(coeffs)?;
    let factors = a.iter().map(|a| curve_factor(a, order)).collect::<Result<Vec<_>, _>>()?;
    let refs: Vec<(usize, &Factor<SPoly>)> = factors.iter().enumerate().map(|(i, f)| (i, f.as_ref())).collect();
    Ok(naive_integral(model, &refs, order))
}

/// `Ell_nv(X, C)`: the integral of the theta factors, without graph corrections.
pub fn ell_naive(model: &SurfaceModel, coeffs: &Coeffs, order: usize) -> Result<QSeries<SFunc>, GenusError> {
    Ok(naive_binom(model, coeffs, order)?.map(BinomFrac::to_sfunc))
}

/// Coefficient of `phi(a)` in the correction, keyed by `a`; `d` is folded into `a = 1`.
pub fn correction_weights(g: &ResolutionGraph, flags: &Interpretation) -> BTreeMap<Rational, Rational> {
    let sets = combinatorial_sets(g, flags);
    let m = |v: usize| rat(g.vertices()[v].m);
    let mut w: BTreeMap<Rational, Rational> = BTreeMap::new();
    let mut add = |a: &Rational, x: Rational| *w.entry(a.clone()).or_insert_with(|| rat(0)) += x;
    match flags.correction {
        CorrectionMode::Default | CorrectionMode::Case3 => {
            for (a, s) in &sets.s {
                add(a, rat(s.len() as i64));
            }
            let subtracted = if flags.correction == CorrectionMode::Default { &sets.bp } else { &sets.b };
            for (a, bs) in subtracted {
                for &v in bs {
                    add(a, rat(1) - m(v));
                }
            }
        }
        CorrectionMode::Alt => {
            let labels: std::collections::BTreeSet<Rational> =
                g.vertices().iter().map(|v| v.a.clone()).filter(|a| *a != rat(-1)).collect();
            for a in labels {
                let s = sets.s.get(&a).map_or(0, |s| s.len() as i64);
                let bp: Rational = sets.bp.get(&a).map_or(rat(0), |bs| bs.iter().map(|&v| m(v)).sum());
                add(&a, rat(s) - bp - rat(1));
            }
        }
    }
    // Each bridge contributes m_v phi(a_v) once; its two labels give the same phi.
    for v in (0..g.len()).filter(|&v| is_bridge(g, v)) {
        let a = g.bridge_neighbors(v).unwrap().iter().map(|&u| g.vertices()[u].a.clone()).min().unwrap();
        add(&a, m(v));
    }
    add(&rat(1), rat(sets.d as i64));
    w.retain(|_, x| *x != rat(0));
    w
}

fn correction_binom(g: &ResolutionGraph, flags: &Interpretation, order: usize) -> Result<QSeries<BinomFrac<SPoly>>, GenusError> {
    let mut acc = QSeries::new(Vec::new(), order);
    for (a, w) in correction_weights(g, flags) {
        acc = acc.plus(&cached_phi(&a, order)?.scale(&w));
    }
    Ok(acc)
}

/// The combinatorial correction `Ell - Ell_nv`.
pub fn correction_sum(g: &ResolutionGraph, flags: &Interpretation, order: usize) -> Result<QSeries<SFunc>, GenusError> {
    Ok(correction_binom(g, flags, order)?.map(BinomFrac::to_sfunc))
}

/// `Ell(X, C) = Ell_nv + correction`.
pub fn ell(model: &SurfaceModel, coeffs: &Coeffs, order: usize, flags: &Interpretation) -> Result<GenusResult, GenusError> {
    let naive = naive_binom(model, coeffs, order)?;
    let graph = ResolutionGraph::from_model(model, coeffs)?;
    let correction = correction_binom(&graph, flags, order)?;
    Ok(GenusResult {
        series: naive.plus(&correction).map(BinomFrac::to_sfunc),
        naive: naive.map(BinomFrac::to_sfunc),
        correction: correction.map(BinomFrac::to_sfunc),
        coeffs: coeffs.clone(),
        order,
        flags: *flags,
    })
}

/// Only the total series; skips separate canonicalization of the two parts.
pub fn ell_series(model: &SurfaceModel, coeffs: &Coeffs, order: usize, flags: &Interpretation) -> Result<QSeries<SFunc>, GenusError> {
    let naive = naive_binom(model, coeffs, order)?;
    let graph = ResolutionGraph::from_model(model, coeffs)?;
    Ok(naive.plus(&correction_binom(&graph, flags, order)?).map(BinomFrac::to_sfunc))
}

/// Coefficients used for a singular surface: discrepancies on exceptional
/// curves, supplied or zero coefficients on the others.
pub fn singular_coeffs(model: &SurfaceModel, supplied: &Coeffs) -> Result<Coeffs, GenusError> {
    let fixed: Coeffs = model
        .curves()
        .iter()
        .filter(|c| !c.exceptional)
        .map(|c| (c.label.clone(), supplied.get(&c.label).cloned().unwrap_or_else(|| rat(0))))
        .collect();
    let mut coeffs = solve_discrepancies_with(model, &fixed)?;
    coeffs.extend(fixed);
    Ok(coeffs)
}

/// `Ell(Z, Delta)` from a log resolution: solve discrepancies, then [`ell`].
pub fn ell_singular(model: &SurfaceModel, supplied: &Coeffs, order: usize, flags: &Interpretation) -> Result<GenusResult, GenusError> {
    ell(model, &singular_coeffs(model, supplied)?, order, flags)
}

/// `y` times the `q^0` coefficient.
pub fn chi_y(res: &GenusResult) -> SFunc {
    res.series.coefficient(0).times_y_power(&rat(1))
}
