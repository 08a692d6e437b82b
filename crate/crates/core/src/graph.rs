//! Labeled resolution graph and the combinatorial sets of the correction term.
//!
//! A `-1` vertex is one whose coefficient is `-1`. A bridge is a genus 0
//! `-1` vertex joined by single edges either to exactly two vertices whose
//! coefficients sum to `-2`, or to exactly one vertex of coefficient `-2`.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::coeff::{rat, Rational};
use crate::surface::{Coeffs, SurfaceError, SurfaceModel};

/// Vertex label `(a, m, g)`: coefficient, minus self-intersection, genus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vertex {
    pub a: Rational,
    pub m: i64,
    pub g: u32,
}

/// Multigraph with symmetric edge multiplicities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolutionGraph {
    vertices: Vec<Vertex>,
    mult: Vec<Vec<u32>>,
}

/// Which vertices on a path must satisfy the genus and monotonicity conditions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum PathCondition {
    /// Every vertex except the target, including the source.
    #[default]
    Literal,
    /// Strictly interior vertices only.
    Interior,
}

/// How "connected to" is read for the `R_a` and `B'_a` conditions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Connectivity {
    Path,
    Adjacent,
}

/// Grouping of the first correction sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum CorrectionMode {
    /// `|S_a| - sum_{B'_a} (m - 1)`.
    #[default]
    Default,
    /// `|S_a| - sum_{B'_a} m - 1`.
    Alt,
    /// `|S_a| - sum_{B_a} (m - 1)`, i.e. `B_a` in place of `B'_a`.
    Case3,
}

/// Interpretation flags for the correction term.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Interpretation {
    pub path: PathCondition,
    pub r_connectivity: Connectivity,
    pub bp_connectivity: Connectivity,
    pub correction: CorrectionMode,
}

impl Default for Interpretation {
    fn default() -> Self {
        Interpretation {
            path: PathCondition::Literal,
            r_connectivity: Connectivity::Path,
            bp_connectivity: Connectivity::Adjacent,
            correction: CorrectionMode::Default,
        }
    }
}

impl std::fmt::Display for Interpretation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        use clap::ValueEnum;
        let name = |v: Option<clap::builder::PossibleValue>| v.map(|p| p.get_name().to_string()).unwrap_or_default();
        write!(
            f,
            "correction={} path-condition={} r-connectivity={} bp-connectivity={}",
            name(self.correction.to_possible_value()),
            name(self.path.to_possible_value()),
            name(self.r_connectivity.to_possible_value()),
            name(self.bp_connectivity.to_possible_value()),
        )
    }
}

/// Sets indexed by a coefficient `a != -1`.
pub type IndexedSets = BTreeMap<Rational, BTreeSet<usize>>;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CombinatorialSets {
    pub s: IndexedSets,
    pub r: IndexedSets,
    pub b: IndexedSets,
    pub bp: IndexedSets,
    pub d: u64,
}

impl ResolutionGraph {
    pub fn new(vertices: Vec<Vertex>, mult: Vec<Vec<u32>>) -> Self {
        assert_eq!(vertices.len(), mult.len());
        ResolutionGraph { vertices, mult }
    }

    /// Graph of a configuration: `m = -self_int`, edges from the pairing.
    pub fn from_model(model: &SurfaceModel, coeffs: &Coeffs) -> Result<Self, SurfaceError> {
        let a = model.coeff_vector(coeffs)?;
        let vertices = model
            .curves()
            .iter()
            .zip(a)
            .map(|(c, a)| Vertex { a, m: -c.self_int, g: c.genus })
            .collect();
        Ok(ResolutionGraph { vertices, mult: model.pair_int().to_vec() })
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn multiplicity(&self, i: usize, j: usize) -> u32 {
        self.mult[i][j]
    }

    pub fn is_minus_one(&self, v: usize) -> bool {
        self.vertices[v].a == rat(-1)
    }

    /// Distinct neighbors with edge multiplicities.
    pub fn neighbors(&self, v: usize) -> Vec<(usize, u32)> {
        (0..self.len()).filter(|&w| w != v && self.mult[v][w] > 0).map(|w| (w, self.mult[v][w])).collect()
    }

    /// Sum of edge multiplicities at `v`.
    pub fn degree(&self, v: usize) -> u32 {
        self.neighbors(v).iter().map(|n| n.1).sum()
    }

    /// Neighbor coefficients of a bridge (one entry for the single-neighbor form).
    pub fn bridge_neighbors(&self, v: usize) -> Option<Vec<usize>> {
        if !is_bridge(self, v) {
            return None;
        }
        Some(self.neighbors(v).into_iter().map(|n| n.0).collect())
    }

    /// `-1` vertices reachable from `v` along paths obeying the genus and monotonicity conditions.
    pub fn reachable_minus_one(&self, v: usize, path: PathCondition) -> BTreeSet<usize> {
        let av = &self.vertices[v].a;
        let allowed = |k: usize| {
            let x = &self.vertices[k];
            let monotone = if *av > rat(-1) { x.a >= *av } else { x.a <= *av };
            x.g == 0 && monotone
        };
        let mut targets = BTreeSet::new();
        if path == PathCondition::Literal && !allowed(v) {
            return targets;
        }
        let mut seen = vec![false; self.len()];
        let mut queue = VecDeque::from([v]);
        seen[v] = true;
        while let Some(u) = queue.pop_front() {
            for (w, _) in self.neighbors(u) {
                if self.is_minus_one(w) {
                    targets.insert(w);
                } else if !seen[w] && allowed(w) {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        targets
    }

    /// Number of edges between two `-1` vertices, with multiplicity.
    pub fn minus_one_edges(&self) -> u64 {
        let mut d = 0;
        for i in 0..self.len() {
            for j in i + 1..self.len() {
                if self.is_minus_one(i) && self.is_minus_one(j) {
                    d += self.mult[i][j] as u64;
                }
            }
        }
        d
    }
}

/// True when `v` is a bridge.
pub fn is_bridge(g: &ResolutionGraph, v: usize) -> bool {
    let x = &g.vertices[v];
    if x.a != rat(-1) || x.g != 0 {
        return false;
    }
    let nb = g.neighbors(v);
    // A -1 neighbor would put phi(-1), a pole, into the correction; such
    // vertices are counted through `d` instead.
    if nb.iter().any(|&(w, m)| m != 1 || g.vertices[w].a == rat(-1)) {
        return false;
    }
    match nb[..] {
        [(w1, _), (w2, _)] => &g.vertices[w1].a + &g.vertices[w2].a == rat(-2),
        [(w, _)] => g.vertices[w].a == rat(-2),
        _ => false,
    }
}

/// True when a path leads from `v` to a `-1` vertex that is not a bridge.
pub fn connected_to_minus_one(g: &ResolutionGraph, v: usize, path: PathCondition) -> bool {
    g.reachable_minus_one(v, path).into_iter().any(|t| !is_bridge(g, t))
}

/// `S_a`, `R_a`, `B_a`, `B'_a` and `d` under the given interpretation.
pub fn combinatorial_sets(g: &ResolutionGraph, flags: &Interpretation) -> CombinatorialSets {
    let mut sets = CombinatorialSets { d: g.minus_one_edges(), ..Default::default() };
    let bridges: Vec<usize> = (0..g.len()).filter(|&v| is_bridge(g, v)).collect();
    let reach: Vec<Option<BTreeSet<usize>>> =
        (0..g.len()).map(|v| (!g.is_minus_one(v)).then(|| g.reachable_minus_one(v, flags.path))).collect();

    for v in 0..g.len() {
        let Some(targets) = &reach[v] else { continue };
        if !targets.iter().any(|&t| !is_bridge(g, t)) {
            continue;
        }
        let a = g.vertices[v].a.clone();
        sets.s.entry(a.clone()).or_default().insert(v);
        let hits_bridge = match flags.r_connectivity {
            Connectivity::Path => targets.iter().any(|&t| is_bridge(g, t)),
            Connectivity::Adjacent => g.neighbors(v).iter().any(|&(w, _)| is_bridge(g, w)),
        };
        if hits_bridge {
            sets.r.entry(a).or_default().insert(v);
        }
    }

    for &v in &bridges {
        for w in g.bridge_neighbors(v).unwrap() {
            let a = g.vertices[w].a.clone();
            if a == rat(-1) {
                continue;
            }
            let partner = rat(-2) - &a;
            sets.b.entry(a.clone()).or_default().insert(v);
            sets.b.entry(partner).or_default().insert(v);
        }
    }

    for (a, members) in &sets.b {
        let Some(r_a) = sets.r.get(a) else { continue };
        for &v in members {
            let linked = match flags.bp_connectivity {
                Connectivity::Adjacent => g.neighbors(v).iter().any(|(w, _)| r_a.contains(w)),
                Connectivity::Path => r_a.iter().any(|&w| reach[w].as_ref().is_some_and(|t| t.contains(&v))),
            };
            if linked {
                sets.bp.entry(a.clone()).or_default().insert(v);
            }
        }
    }
    sets
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::ratio;

    fn graph(labels: &[(Rational, i64, u32)], edges: &[(usize, usize, u32)]) -> ResolutionGraph {
        let n = labels.len();
        let mut mult = vec![vec![0; n]; n];
        for &(i, j, k) in edges {
            mult[i][j] += k;
            mult[j][i] += k;
        }
        ResolutionGraph::new(labels.iter().map(|(a, m, g)| Vertex { a: a.clone(), m: *m, g: *g }).collect(), mult)
    }

    #[test]
    fn bridge_examples() {
        let a = ratio(1, 3);
        let g = graph(&[(rat(-1), 2, 0), (a.clone(), 3, 0), (rat(-2) - a, 3, 0)], &[(0, 1, 1), (0, 2, 1)]);
        assert!(is_bridge(&g, 0));
        let g = graph(&[(rat(-1), 1, 0), (rat(-2), 4, 0)], &[(0, 1, 1)]);
        assert!(is_bridge(&g, 0));
        let g = graph(&[(rat(-1), 1, 1)], &[]);
        assert!(!is_bridge(&g, 0));
        // A double edge to one neighbor is not a bridge.
        let g = graph(&[(rat(-1), 1, 0), (rat(-2), 4, 0)], &[(0, 1, 2)]);
        assert!(!is_bridge(&g, 0));
        // Between two -1 vertices the labels sum to -2, but this is not a bridge.
        let g = graph(&[(rat(-1), 1, 0), (rat(-1), 1, 0), (rat(-1), 1, 0)], &[(0, 1, 1), (0, 2, 1)]);
        assert!(!is_bridge(&g, 0));
    }

    #[test]
    fn path_connectivity_examples() {
        // v(-1 non-bridge, genus 1) adjacent to u
        let g = graph(&[(rat(0), 2, 0), (rat(-1), 1, 1)], &[(0, 1, 1)]);
        assert!(connected_to_minus_one(&g, 0, PathCondition::Literal));
        let g = graph(&[(rat(1), 2, 0), (rat(0), 2, 0), (rat(-1), 1, 1)], &[(0, 1, 1), (1, 2, 1)]);
        assert!(!connected_to_minus_one(&g, 0, PathCondition::Literal));
        let g = graph(&[(rat(-3), 2, 0), (rat(-4), 2, 0), (rat(-1), 1, 1)], &[(0, 1, 1), (1, 2, 1)]);
        assert!(connected_to_minus_one(&g, 0, PathCondition::Literal));
    }

    #[test]
    fn path_condition_source_genus() {
        let g = graph(&[(rat(0), 2, 1), (rat(-1), 1, 1)], &[(0, 1, 1)]);
        assert!(!connected_to_minus_one(&g, 0, PathCondition::Literal));
        assert!(connected_to_minus_one(&g, 0, PathCondition::Interior));
    }

    #[test]
    fn set_examples() {
        let g = graph(&[(rat(1), 2, 0)], &[]);
        assert_eq!(combinatorial_sets(&g, &Interpretation::default()), CombinatorialSets::default());
        let g = graph(&[(rat(-1), 1, 1), (rat(-1), 1, 1)], &[(0, 1, 3)]);
        assert_eq!(combinatorial_sets(&g, &Interpretation::default()).d, 3);
        let a = ratio(-1, 2);
        let g = graph(&[(rat(-1), 2, 0), (a.clone(), 3, 0), (rat(-2) - &a, 3, 0)], &[(0, 1, 1), (0, 2, 1)]);
        let sets = combinatorial_sets(&g, &Interpretation::default());
        assert!(sets.s.is_empty());
        assert_eq!(sets.b[&a], BTreeSet::from([0]));
        assert_eq!(sets.b[&(rat(-2) - &a)], BTreeSet::from([0]));
    }

    #[test]
    fn star_sets() {
        // E1..E3 (-1, genus 0) around E4 (-2): each -1 vertex is a single-neighbor bridge.
        let mut labels = vec![(rat(-1), 4, 0); 3];
        labels.push((rat(-2), 1, 0));
        let g = graph(&labels, &[(0, 3, 1), (1, 3, 1), (2, 3, 1)]);
        let sets = combinatorial_sets(&g, &Interpretation::default());
        assert!(sets.s.is_empty());
        assert_eq!(sets.b[&rat(-2)].len(), 3);
        assert_eq!(sets.b[&rat(0)].len(), 3);
        assert_eq!(sets.d, 0);
    }

    #[test]
    fn r_and_bp_sets() {
        // w(a=1/2) adjacent to a genus-1 -1 vertex and to a bridge between w and x(-5/2).
        let a = ratio(1, 2);
        let g = graph(
            &[(a.clone(), 3, 0), (rat(-1), 2, 1), (rat(-1), 1, 0), (rat(-2) - &a, 3, 0)],
            &[(0, 1, 1), (0, 2, 1), (2, 3, 1)],
        );
        let sets = combinatorial_sets(&g, &Interpretation::default());
        assert_eq!(sets.s[&a], BTreeSet::from([0]));
        assert_eq!(sets.r[&a], BTreeSet::from([0]));
        assert_eq!(sets.bp[&a], BTreeSet::from([2]));
        assert!(!sets.bp.contains_key(&(rat(-2) - &a)));
    }
}
