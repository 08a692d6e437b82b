//! Stringy `chi_y` from strata combinatorics, for graphs whose `-1` vertices are all bridges.

use crate::coeff::{rat, ratio, Field, Rational, Ring, SFunc, SPoly};
use crate::graph::{is_bridge, ResolutionGraph};

use super::GenusError;

/// `E(X; y, 1)` as coefficients of `1, y, y^2`.
pub type AmbientE = [Rational; 3];

/// Hirzebruch `chi_{-y}` of a smooth surface: `chi0 - chi1 y + chi0 y^2`,
/// `chi0 = (c1^2 + c2) / 12`, `chi1 = (c1^2 - 5 c2) / 6`.
pub fn hirzebruch_chi_y(c1sq: i64, c2: i64) -> AmbientE {
    let chi0 = ratio(c1sq + c2, 12);
    let chi1 = ratio(c1sq - 5 * c2, 6);
    [chi0.clone(), -chi1, chi0]
}

fn poly(c: &[Rational]) -> SFunc {
    SFunc::from_poly(SPoly::from_terms(1, c.iter().enumerate().map(|(i, x)| (i as i64, x.clone()))))
}

/// `(y - 1) / (y^(a+1) - 1)`.
fn stratum_factor(a: &Rational) -> SFunc {
    let y_minus_1 = poly(&[rat(-1), rat(1)]);
    let den = SFunc::from_poly(SPoly::power(rat(1), &(a + rat(1))).minus(&SPoly::one()));
    y_minus_1.divide(&den).expect("a != -1")
}

/// Veys' stringy `chi_y` in the variable `y`.
///
/// `E(X^o) + sum_i E(C_i^o) f(a_i) + sum_{edges} f(a_i) f(a_j) + sum_{bridges} m f(a_1) f(a_2)`
/// with `f(a) = (y - 1)/(y^(a+1) - 1)`, strata avoiding bridges, and `a_2 = 0`
/// for a bridge with one neighbor.
pub fn veys_chi_y(g: &ResolutionGraph, ambient: &AmbientE) -> Result<SFunc, GenusError> {
    let n = g.len();
    for v in 0..n {
        if g.is_minus_one(v) && !is_bridge(g, v) {
            return Err(GenusError::VeysHypothesisViolated(format!("vertex {v} has coefficient -1 but is not a bridge")));
        }
    }
    let labels = g.vertices();
    let curve_e = |v: usize| rat(1 - labels[v].g as i64);
    // E(X^o) = E(X) - sum E(C_i) + #points.
    let mut points = 0i64;
    for i in 0..n {
        for j in i + 1..n {
            points += g.multiplicity(i, j) as i64;
        }
    }
    let mut open = ambient.clone();
    for v in 0..n {
        open[0] -= curve_e(v);
        open[1] -= curve_e(v);
    }
    open[0] += rat(points);
    let mut total = poly(&open);
    for v in (0..n).filter(|&v| !g.is_minus_one(v)) {
        let punctures = rat(g.degree(v) as i64);
        let e = poly(&[curve_e(v) - punctures, curve_e(v)]);
        total = total.plus(&e.times(&stratum_factor(&labels[v].a)));
    }
    for i in 0..n {
        for j in i + 1..n {
            let k = g.multiplicity(i, j);
            if k == 0 || g.is_minus_one(i) || g.is_minus_one(j) {
                continue;
            }
            let t = stratum_factor(&labels[i].a).times(&stratum_factor(&labels[j].a));
            total = total.plus(&t.scale(&rat(k as i64)));
        }
    }
    for v in (0..n).filter(|&v| g.is_minus_one(v)) {
        let nb = g.bridge_neighbors(v).expect("checked above");
        let a1 = labels[nb[0]].a.clone();
        let a2 = nb.get(1).map_or_else(|| rat(0), |&u| labels[u].a.clone());
        let t = stratum_factor(&a1).times(&stratum_factor(&a2));
        total = total.plus(&t.scale(&rat(labels[v].m)));
    }
    Ok(total)
}
