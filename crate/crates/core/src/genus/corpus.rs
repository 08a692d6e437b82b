//! Seeded random configurations for the verification suites.

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::coeff::{rat, ratio, Rational};
use crate::surface::{Coeffs, Curve, SurfaceModel};

use super::singular_coeffs;

/// A surface model with coefficients on every curve.
#[derive(Debug, Clone, PartialEq)]
pub struct Configuration {
    pub model: SurfaceModel,
    pub coeffs: Coeffs,
}

/// A bridge configuration with a perturbation satisfying `m_j b_j = b_j1 + b_j2` at every bridge.
#[derive(Debug, Clone, PartialEq)]
pub struct BridgeConfiguration {
    pub config: Configuration,
    pub perturbation: Coeffs,
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Coefficients other than `-1` used for assignments.
fn coefficient_pool() -> Vec<Rational> {
    vec![rat(-4), rat(-3), ratio(-5, 2), rat(-2), ratio(-3, 2), ratio(-1, 2), rat(0), ratio(1, 3), ratio(1, 2), rat(1), rat(2), rat(3)]
}

fn label(i: usize) -> String {
    format!("C{}", i + 1)
}

fn symmetric(n: usize, edges: &[(usize, usize, u32)]) -> Vec<Vec<u32>> {
    let mut m = vec![vec![0; n]; n];
    for &(i, j, k) in edges {
        m[i][j] += k;
        m[j][i] += k;
    }
    m
}

/// Random curve configuration with up to five curves.
///
/// About a third of the configurations take solved discrepancies on
/// exceptional curves; the rest get assigned coefficients, with `-1`
/// deliberately frequent and edges often joining `a` to `-2 - a` so every
/// blow-up case occurs.
pub fn random_configuration(rng: &mut impl Rng) -> Configuration {
    loop {
        let n = rng.gen_range(1..=5);
        let curves: Vec<Curve> = (0..n)
            .map(|i| {
                let genus = if rng.gen_bool(0.2) { 1 } else { 0 };
                Curve::new(label(i), genus, rng.gen_range(-4..=-1), true)
            })
            .collect();
        let mut edges = Vec::new();
        for j in 1..n {
            // A spanning forest plus occasional extra edges.
            if rng.gen_bool(0.85) {
                edges.push((rng.gen_range(0..j), j, 1));
            }
        }
        if n >= 3 && rng.gen_bool(0.3) {
            let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
            if i != j {
                edges.push((i.min(j), i.max(j), if rng.gen_bool(0.3) { 2 } else { 1 }));
            }
        }
        let (c1sq, c2) = (rng.gen_range(-4..=9), rng.gen_range(0..=12));
        let Ok(model) = SurfaceModel::new(curves, symmetric(n, &edges), c1sq, c2) else { continue };
        if rng.gen_bool(0.35) {
            if let Ok(coeffs) = singular_coeffs(&model, &Coeffs::new()) {
                return Configuration { model, coeffs };
            }
            continue;
        }
        let pool = coefficient_pool();
        let mut a: Vec<Rational> =
            (0..n).map(|_| if rng.gen_bool(0.35) { rat(-1) } else { pool.choose(rng).unwrap().clone() }).collect();
        for &(i, j, _) in &edges {
            if rng.gen_bool(0.25) && a[i] != rat(-1) {
                a[j] = rat(-2) - &a[i];
            }
        }
        let coeffs = (0..n).map(|i| (label(i), a[i].clone())).collect();
        return Configuration { model, coeffs };
    }
}

/// Random configuration whose `-1` curves are all bridges, with a matching perturbation.
pub fn random_bridge_configuration(rng: &mut impl Rng) -> BridgeConfiguration {
    let pool: Vec<Rational> = coefficient_pool();
    let base = rng.gen_range(1..=3);
    let mut curves = Vec::new();
    let mut a: Vec<Rational> = Vec::new();
    let mut edges: Vec<(usize, usize, u32)> = Vec::new();
    for i in 0..base {
        curves.push(Curve::new(label(i), if rng.gen_bool(0.25) { 1 } else { 0 }, rng.gen_range(-4..=-1), true));
        a.push(pool.choose(rng).unwrap().clone());
    }
    for j in 1..base {
        if rng.gen_bool(0.6) {
            edges.push((rng.gen_range(0..j), j, if rng.gen_bool(0.2) { 2 } else { 1 }));
        }
    }
    let bridges = rng.gen_range(1..=2);
    let mut bridge_list = Vec::new();
    for _ in 0..bridges {
        let anchors: Vec<usize> = (0..curves.len()).filter(|&i| a[i] != rat(-1)).collect();
        let u = *anchors.choose(rng).unwrap();
        if a[u] == rat(-2) && rng.gen_bool(0.5) {
            // Single-neighbor bridge on a -2 curve.
            let v = curves.len();
            curves.push(Curve::new(label(v), 0, -rng.gen_range(1..=3), true));
            a.push(rat(-1));
            edges.push((u, v, 1));
            bridge_list.push((v, vec![u]));
            continue;
        }
        // Partner with coefficient -2 - a_u, new or reused.
        let want = rat(-2) - &a[u];
        let partner = (0..curves.len()).find(|&w| w != u && a[w] == want && rng.gen_bool(0.5));
        let w = partner.unwrap_or_else(|| {
            let w = curves.len();
            curves.push(Curve::new(label(w), if rng.gen_bool(0.2) { 1 } else { 0 }, rng.gen_range(-4..=-1), true));
            a.push(want.clone());
            w
        });
        let v = curves.len();
        curves.push(Curve::new(label(v), 0, -rng.gen_range(1..=3), true));
        a.push(rat(-1));
        edges.push((u, v, 1));
        edges.push((w, v, 1));
        bridge_list.push((v, vec![u, w]));
    }
    let n = curves.len();
    let model = SurfaceModel::new(curves, symmetric(n, &edges), rng.gen_range(-4..=9), rng.gen_range(0..=12))
        .expect("generated pairing is symmetric");
    let coeffs: Coeffs = (0..n).map(|i| (label(i), a[i].clone())).collect();
    loop {
        let mut b: Vec<Rational> = (0..n).map(|i| if a[i] == rat(-1) { rat(0) } else { rat(rng.gen_range(0..=3)) }).collect();
        let mut ok = true;
        for (v, nb) in &bridge_list {
            let total: Rational = nb.iter().map(|&u| b[u].clone()).sum();
            let m = -model.curves()[*v].self_int;
            b[*v] = total / rat(m);
            ok &= b[*v] != rat(0);
        }
        if ok {
            let perturbation = (0..n).map(|i| (label(i), b[i].clone())).collect();
            return BridgeConfiguration { config: Configuration { model, coeffs }, perturbation };
        }
    }
}

/// Resolved cone over an elliptic curve of degree `d`: the exceptional
/// section `E` of a ruled surface over an elliptic curve, with `E.E = -d`.
pub fn simple_elliptic(d: i64) -> SurfaceModel {
    SurfaceModel::new(vec![Curve::new("E", 1, -d, true)], vec![vec![0]], 0, 0).expect("valid model")
}

/// [`simple_elliptic`] together with the strict transform `H` of an ample
/// divisor through the singular point whose pullback is `H + m E`.
///
/// `H` is the genus-1 class `E + (m + 1) d F`, so `H.E = m d` and
/// `H.H = (2m + 1) d`. The matching perturbation is `b_E = m`, `b_H = 1`.
pub fn simple_elliptic_ample(d: i64, m: u32) -> (SurfaceModel, Coeffs) {
    let model = SurfaceModel::new(
        vec![Curve::new("E", 1, -d, true), Curve::new("H", 1, (2 * m as i64 + 1) * d, false)],
        symmetric(2, &[(0, 1, m * d as u32)]),
        0,
        0,
    )
    .expect("valid model");
    let b = Coeffs::from([("E".to_string(), rat(m as i64)), ("H".to_string(), rat(1))]);
    (model, b)
}

/// Three disjoint rational curves meeting a central one once each;
/// `K = pi^* K_Z - E1 - E2 - E3 - 2 E4`.
pub fn star() -> SurfaceModel {
    let mut curves: Vec<Curve> = (1..=3).map(|i| Curve::new(format!("E{i}"), 0, -4, true)).collect();
    curves.push(Curve::new("E4", 0, -1, true));
    SurfaceModel::new(curves, symmetric(4, &[(0, 3, 1), (1, 3, 1), (2, 3, 1)]), 0, 0).expect("valid model")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{is_bridge, ResolutionGraph};

    #[test]
    fn bridge_configurations_are_bridge_only() {
        let mut r = rng(3);
        for _ in 0..30 {
            let bc = random_bridge_configuration(&mut r);
            let g = ResolutionGraph::from_model(&bc.config.model, &bc.config.coeffs).unwrap();
            let minus_one: Vec<_> = (0..g.len()).filter(|&v| g.is_minus_one(v)).collect();
            assert!(!minus_one.is_empty());
            assert!(minus_one.iter().all(|&v| is_bridge(&g, v)));
        }
    }

    #[test]
    fn star_solves() {
        let c = crate::surface::solve_discrepancies(&star()).unwrap();
        let v: Vec<_> = c.values().cloned().collect();
        assert_eq!(v, vec![rat(-1), rat(-1), rat(-1), rat(-2)]);
    }

    #[test]
    fn simple_elliptic_discrepancy() {
        let c = crate::surface::solve_discrepancies(&simple_elliptic(3)).unwrap();
        assert_eq!(c["E"], rat(-1));
        let (m, _) = simple_elliptic_ample(2, 3);
        assert_eq!(m.k_dot(1), -m.dot(1, 1));
    }

    #[test]
    fn deterministic() {
        assert_eq!(random_configuration(&mut rng(9)), random_configuration(&mut rng(9)));
    }
}
