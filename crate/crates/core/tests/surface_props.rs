//! Discrepancy solver, blow-up bookkeeping and the combinatorial sets of the resolution graph.

use ellgenus::coeff::{rat, ratio, Rational};
use ellgenus::genus::singular_coeffs;
use ellgenus::graph::{combinatorial_sets, Connectivity, CorrectionMode, Interpretation, PathCondition, ResolutionGraph, Vertex};
use ellgenus::surface::{blowup, solve_discrepancies, Coeffs, Curve, SurfaceModel};
use proptest::prelude::*;

fn symmetric(n: usize, edges: &[(usize, usize, u32)]) -> Vec<Vec<u32>> {
    let mut m = vec![vec![0; n]; n];
    for &(i, j, k) in edges {
        if i != j {
            m[i][j] += k;
            m[j][i] += k;
        }
    }
    m
}

/// Exceptional trees of rational or elliptic curves with a negative definite lattice,
/// plus one optional non-exceptional curve with a fixed coefficient.
fn exceptional_tree() -> impl Strategy<Value = (SurfaceModel, Coeffs)> {
    (1usize..6)
        .prop_flat_map(|n| {
            (
                prop::collection::vec((0u32..2, -5i64..-1), n),
                prop::collection::vec(any::<prop::sample::Index>(), n),
                prop::option::of((-3i64..4, 0u32..3)),
            )
        })
        .prop_filter_map("negative definite", |(curves, parents, extra)| {
            let n = curves.len();
            let mut list: Vec<Curve> =
                curves.iter().enumerate().map(|(i, &(g, e))| Curve::new(format!("E{i}"), g, e, true)).collect();
            let mut edges: Vec<(usize, usize, u32)> = (1..n).map(|j| (parents[j].index(j), j, 1)).collect();
            let mut fixed = Coeffs::new();
            if let Some((p, meets)) = extra {
                list.push(Curve::new("H", 0, 1, false));
                edges.push((0, n, meets));
                fixed.insert("H".into(), ratio(p, 2));
            }
            let model = SurfaceModel::new(list.clone(), symmetric(list.len(), &edges), 0, 0).ok()?;
            model.check_negative_definite().ok()?;
            Some((model, fixed))
        })
}

fn flag_sets() -> Vec<Interpretation> {
    let mut out = Vec::new();
    for path in [PathCondition::Literal, PathCondition::Interior] {
        for r_connectivity in [Connectivity::Path, Connectivity::Adjacent] {
            for bp_connectivity in [Connectivity::Path, Connectivity::Adjacent] {
                for correction in [CorrectionMode::Default, CorrectionMode::Alt, CorrectionMode::Case3] {
                    out.push(Interpretation { path, r_connectivity, bp_connectivity, correction });
                }
            }
        }
    }
    out
}

fn graph() -> impl Strategy<Value = ResolutionGraph> {
    let labels = prop_oneof![
        3 => Just(rat(-1)),
        1 => Just(rat(-2)),
        1 => Just(rat(0)),
        1 => Just(ratio(-1, 2)),
        1 => Just(ratio(-3, 2)),
        1 => Just(rat(1)),
        1 => Just(rat(-3)),
    ];
    (1usize..7)
        .prop_flat_map(move |n| {
            (
                prop::collection::vec((labels.clone(), 1i64..4, 0u32..2), n),
                prop::collection::vec((0..n, 0..n, 1u32..3), 0..2 * n),
            )
        })
        .prop_map(|(vs, edges)| {
            let n = vs.len();
            let vertices = vs.into_iter().map(|(a, m, g)| Vertex { a, m, g }).collect();
            ResolutionGraph::new(vertices, symmetric(n, &edges))
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// Adjunction on a curve of genus g: sum of neighbor coefficients + 2 - 2g = m (a + 1).
    #[test]
    fn adjunction_relation((model, fixed) in exceptional_tree()) {
        let coeffs = singular_coeffs(&model, &fixed).unwrap();
        let a = |i: usize| coeffs[&model.curves()[i].label].clone();
        for (i, c) in model.curves().iter().enumerate() {
            if !c.exceptional {
                continue;
            }
            let nb: Rational = (0..model.len()).filter(|&j| j != i).map(|j| a(j) * rat(model.pair(i, j) as i64)).sum();
            let lhs = nb + rat(2) - rat(2 * c.genus as i64);
            prop_assert_eq!(lhs, rat(-c.self_int) * (a(i) + rat(1)), "curve {}", c.label);
        }
    }

    /// Solving after a blow-up reproduces the coefficients the blow-up assigns.
    #[test]
    fn solver_commutes_with_blowup((model, fixed) in exceptional_tree()) {
        let coeffs = singular_coeffs(&model, &fixed).unwrap();
        for p in model.point_specs() {
            let (m2, c2) = blowup(&model, &coeffs, &p).unwrap();
            prop_assert_eq!(m2.c1sq(), model.c1sq() - 1);
            prop_assert_eq!(m2.c2(), model.c2() + 1);
            prop_assert_eq!(singular_coeffs(&m2, &fixed).unwrap(), c2, "at {}", p);
        }
    }

    /// Blowing up a node adds one rational vertex of coefficient `a_i + a_j + 1` and `m = 1`
    /// joined to both ends, and removes one of their common points.
    #[test]
    fn node_blowup_graph((model, fixed) in exceptional_tree()) {
        let coeffs = singular_coeffs(&model, &fixed).unwrap();
        let before = ResolutionGraph::from_model(&model, &coeffs).unwrap();
        for p in model.point_specs() {
            let ellgenus::surface::PointSpec::Node(l1, l2) = &p else { continue };
            let (i, j) = (model.index_of(l1).unwrap(), model.index_of(l2).unwrap());
            let (m2, c2) = blowup(&model, &coeffs, &p).unwrap();
            let after = ResolutionGraph::from_model(&m2, &c2).unwrap();
            let n = before.len();
            prop_assert_eq!(after.len(), n + 1);
            let v = &after.vertices()[n];
            prop_assert_eq!(&v.a, &(&before.vertices()[i].a + &before.vertices()[j].a + rat(1)));
            prop_assert_eq!((v.m, v.g), (1, 0));
            prop_assert_eq!(after.neighbors(n), vec![(i.min(j), 1), (i.max(j), 1)]);
            prop_assert_eq!(after.multiplicity(i, j) + 1, before.multiplicity(i, j));
            for k in 0..n {
                let bump = (k == i || k == j) as i64;
                prop_assert_eq!(after.vertices()[k].m, before.vertices()[k].m + bump);
                prop_assert_eq!(&after.vertices()[k].a, &before.vertices()[k].a);
            }
        }
    }

    #[test]
    fn set_inclusions_and_symmetry(g in graph()) {
        for flags in flag_sets() {
            let sets = combinatorial_sets(&g, &flags);
            for (a, r) in &sets.r {
                prop_assert!(r.is_subset(sets.s.get(a).unwrap()), "R not in S at {a}");
            }
            for (a, bp) in &sets.bp {
                prop_assert!(bp.is_subset(sets.b.get(a).unwrap()), "B' not in B at {a}");
            }
            for (a, b) in &sets.b {
                prop_assert!(*a != rat(-1));
                prop_assert_eq!(Some(b), sets.b.get(&(rat(-2) - a)), "B not symmetric at {}", a);
            }
            for key in sets.s.keys().chain(sets.b.keys()) {
                prop_assert!(*key != rat(-1));
            }
        }
    }
}

#[test]
fn chain_of_minus_two_curves_is_crepant() {
    let model = SurfaceModel::new(
        (0..4).map(|i| Curve::new(format!("E{i}"), 0, -2, true)).collect(),
        symmetric(4, &[(0, 1, 1), (1, 2, 1), (2, 3, 1)]),
        0,
        0,
    )
    .unwrap();
    let c = solve_discrepancies(&model).unwrap();
    assert!(c.values().all(|a| *a == rat(0)));
}

#[test]
fn cone_over_rational_normal_curve() {
    // A single (-n) rational curve has discrepancy -1 + 2/n.
    for n in 2..7 {
        let model = SurfaceModel::new(vec![Curve::new("E", 0, -n, true)], vec![vec![0]], 0, 0).unwrap();
        assert_eq!(solve_discrepancies(&model).unwrap()["E"], ratio(2 - n, n));
    }
}
