//! Intersection-theoretic model of a smooth surface with a curve configuration.
//!
//! The canonical class `K` never appears as a stored curve. Its pairings are
//! derived from adjunction (`K.C = 2g - 2 - C.C`) and `K.K = c1^2`.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::Signed;

use crate::coeff::{rat, Rational, Ring};

/// Coefficient of each curve, keyed by label.
pub type Coeffs = BTreeMap<String, Rational>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SurfaceError {
    #[error("invalid model: {0}")]
    InvalidModel(String),
    #[error("exceptional curves do not span a negative definite lattice")]
    NotNegativeDefinite,
    #[error("exceptional intersection matrix is singular")]
    SingularIntersectionMatrix,
    #[error("invalid point: {0}")]
    InvalidPoint(String),
    #[error("no coefficient for curve {0}")]
    MissingCoefficient(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Curve {
    pub label: String,
    pub genus: u32,
    pub self_int: i64,
    pub exceptional: bool,
}

impl Curve {
    pub fn new(label: impl Into<String>, genus: u32, self_int: i64, exceptional: bool) -> Self {
        Curve { label: label.into(), genus, self_int, exceptional }
    }
}

/// Smooth surface with Chern numbers and a curve configuration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceModel {
    curves: Vec<Curve>,
    pair_int: Vec<Vec<u32>>,
    c1sq: i64,
    c2: i64,
}

/// Where to blow up.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum PointSpec {
    Generic,
    OnCurve(String),
    Node(String, String),
}

impl std::fmt::Display for PointSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PointSpec::Generic => write!(f, "generic"),
            PointSpec::OnCurve(a) => write!(f, "curve:{a}"),
            PointSpec::Node(a, b) => write!(f, "node:{a},{b}"),
        }
    }
}

impl std::str::FromStr for PointSpec {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "generic" {
            return Ok(PointSpec::Generic);
        }
        if let Some(l) = s.strip_prefix("curve:") {
            return Ok(PointSpec::OnCurve(l.trim().to_string()));
        }
        if let Some(rest) = s.strip_prefix("node:") {
            if let Some((a, b)) = rest.split_once(',') {
                return Ok(PointSpec::Node(a.trim().to_string(), b.trim().to_string()));
            }
        }
        Err(format!("expected generic, curve:LABEL or node:LABEL,LABEL, got {s:?}"))
    }
}

impl SurfaceModel {
    /// Builds a model, checking shape, symmetry, zero diagonal and unique labels.
    pub fn new(curves: Vec<Curve>, pair_int: Vec<Vec<u32>>, c1sq: i64, c2: i64) -> Result<Self, SurfaceError> {
        let n = curves.len();
        if pair_int.len() != n || pair_int.iter().any(|row| row.len() != n) {
            return Err(SurfaceError::InvalidModel(format!("pairing matrix must be {n}x{n}")));
        }
        for i in 0..n {
            if pair_int[i][i] != 0 {
                return Err(SurfaceError::InvalidModel(format!("nonzero diagonal entry for {}", curves[i].label)));
            }
            for j in 0..i {
                if pair_int[i][j] != pair_int[j][i] {
                    return Err(SurfaceError::InvalidModel(format!(
                        "asymmetric pairing between {} and {}",
                        curves[i].label, curves[j].label
                    )));
                }
            }
        }
        let mut seen = BTreeSet::new();
        for c in &curves {
            if !seen.insert(c.label.as_str()) {
                return Err(SurfaceError::InvalidModel(format!("duplicate label {}", c.label)));
            }
        }
        Ok(SurfaceModel { curves, pair_int, c1sq, c2 })
    }

    /// Surface with no curves.
    pub fn smooth(c1sq: i64, c2: i64) -> Self {
        SurfaceModel { curves: Vec::new(), pair_int: Vec::new(), c1sq, c2 }
    }

    pub fn curves(&self) -> &[Curve] {
        &self.curves
    }

    pub fn len(&self) -> usize {
        self.curves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.curves.is_empty()
    }

    pub fn c1sq(&self) -> i64 {
        self.c1sq
    }

    pub fn c2(&self) -> i64 {
        self.c2
    }

    pub fn pair(&self, i: usize, j: usize) -> u32 {
        self.pair_int[i][j]
    }

    pub fn pair_int(&self) -> &[Vec<u32>] {
        &self.pair_int
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.curves.iter().position(|c| c.label == label)
    }

    /// `C_i . C_j`, using the self-intersection on the diagonal.
    pub fn dot(&self, i: usize, j: usize) -> i64 {
        if i == j {
            self.curves[i].self_int
        } else {
            self.pair_int[i][j] as i64
        }
    }

    /// `K . C_i` by adjunction.
    pub fn k_dot(&self, i: usize) -> i64 {
        let c = &self.curves[i];
        2 * c.genus as i64 - 2 - c.self_int
    }

    /// Pairing on the basis `{curves..., K}`.
    pub fn intersection_form(&self) -> IntersectionForm {
        let n = self.curves.len();
        let mut m = vec![vec![0i64; n + 1]; n + 1];
        for i in 0..n {
            for j in 0..n {
                m[i][j] = self.dot(i, j);
            }
            m[i][n] = self.k_dot(i);
            m[n][i] = self.k_dot(i);
        }
        m[n][n] = self.c1sq;
        IntersectionForm { m }
    }

    pub fn exceptional_indices(&self) -> Vec<usize> {
        (0..self.curves.len()).filter(|&i| self.curves[i].exceptional).collect()
    }

    /// Checks that the exceptional curves span a negative definite lattice.
    pub fn check_negative_definite(&self) -> Result<(), SurfaceError> {
        let idx = self.exceptional_indices();
        let m: Vec<Vec<BigInt>> = idx.iter().map(|&i| idx.iter().map(|&j| BigInt::from(-self.dot(i, j))).collect()).collect();
        if leading_minors(m).iter().all(|d| d.is_positive()) {
            Ok(())
        } else {
            Err(SurfaceError::NotNegativeDefinite)
        }
    }

    /// All model invariants, including negative definiteness.
    pub fn validate(&self) -> Result<(), SurfaceError> {
        self.check_negative_definite()
    }

    /// Coefficients in curve order; errors on a missing label.
    pub fn coeff_vector(&self, coeffs: &Coeffs) -> Result<Vec<Rational>, SurfaceError> {
        self.curves
            .iter()
            .map(|c| coeffs.get(&c.label).cloned().ok_or_else(|| SurfaceError::MissingCoefficient(c.label.clone())))
            .collect()
    }

    /// Every point spec that is valid for this model: generic, each curve, each node.
    pub fn point_specs(&self) -> Vec<PointSpec> {
        let mut out = vec![PointSpec::Generic];
        for c in &self.curves {
            out.push(PointSpec::OnCurve(c.label.clone()));
        }
        for i in 0..self.len() {
            for j in i + 1..self.len() {
                if self.pair_int[i][j] > 0 {
                    out.push(PointSpec::Node(self.curves[i].label.clone(), self.curves[j].label.clone()));
                }
            }
        }
        out
    }

    fn fresh_label(&self) -> String {
        (1..).map(|k| format!("Bl{k}")).find(|l| self.index_of(l).is_none()).unwrap()
    }
}

/// Leading principal minors via Bareiss elimination without pivoting.
///
/// Stops at the first zero pivot, since later minors cannot be read off.
fn leading_minors(mut a: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let n = a.len();
    let mut minors = Vec::with_capacity(n);
    let mut prev = BigInt::from(1);
    for k in 0..n {
        let pivot = a[k][k].clone();
        minors.push(pivot.clone());
        if pivot == BigInt::from(0) {
            break;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&pivot * &a[i][j] - &a[i][k] * &a[k][j]) / &prev;
            }
            a[i][k] = BigInt::from(0);
        }
        prev = pivot;
    }
    minors
}

/// Solves `M x = b` for an integer matrix by fraction-free elimination with row pivoting.
fn solve_fraction_free(m: &[Vec<i64>], b: &[Rational]) -> Result<Vec<Rational>, SurfaceError> {
    let n = m.len();
    // Clear denominators of b so the augmented matrix is integral.
    let scale = b.iter().fold(BigInt::from(1), |acc, x| num_integer::Integer::lcm(&acc, x.denom()));
    let mut a: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            let mut row: Vec<BigInt> = m[i].iter().map(|&x| BigInt::from(x)).collect();
            row.push((&b[i] * Rational::from_integer(scale.clone())).to_integer());
            row
        })
        .collect();
    let mut prev = BigInt::from(1);
    for k in 0..n {
        let p = (k..n).find(|&i| a[i][k] != BigInt::from(0)).ok_or(SurfaceError::SingularIntersectionMatrix)?;
        a.swap(k, p);
        for i in k + 1..n {
            for j in k + 1..=n {
                a[i][j] = (&a[k][k] * &a[i][j] - &a[i][k] * &a[k][j]) / &prev;
            }
            a[i][k] = BigInt::from(0);
        }
        prev = a[k][k].clone();
    }
    let mut x = vec![Rational::zero(); n];
    for i in (0..n).rev() {
        let mut acc = Rational::from_integer(a[i][n].clone());
        for j in i + 1..n {
            acc -= Rational::from_integer(a[i][j].clone()) * &x[j];
        }
        x[i] = acc / Rational::from_integer(a[i][i].clone());
    }
    let s = Rational::from_integer(scale);
    Ok(x.into_iter().map(|v| v / &s).collect())
}

/// Discrepancies of the exceptional curves, with all other curves at coefficient 0.
pub fn solve_discrepancies(model: &SurfaceModel) -> Result<Coeffs, SurfaceError> {
    solve_discrepancies_with(model, &Coeffs::new())
}

/// Discrepancies of the exceptional curves given fixed coefficients of non-exceptional curves.
///
/// Solves `sum_j a_j C_j.C_i = K.C_i - sum_k a_k C_k.C_i` over exceptional `C_i`,
/// where `k` runs over non-exceptional curves with a supplied coefficient.
pub fn solve_discrepancies_with(model: &SurfaceModel, fixed: &Coeffs) -> Result<Coeffs, SurfaceError> {
    model.check_negative_definite()?;
    let idx = model.exceptional_indices();
    let m: Vec<Vec<i64>> = idx.iter().map(|&i| idx.iter().map(|&j| model.dot(i, j)).collect()).collect();
    let rhs: Vec<Rational> = idx
        .iter()
        .map(|&i| {
            let mut r = rat(model.k_dot(i));
            for (k, c) in model.curves.iter().enumerate() {
                if !c.exceptional {
                    if let Some(a) = fixed.get(&c.label) {
                        r -= a * rat(model.dot(k, i));
                    }
                }
            }
            r
        })
        .collect();
    let x = solve_fraction_free(&m, &rhs)?;
    Ok(idx.iter().zip(x).map(|(&i, a)| (model.curves[i].label.clone(), a)).collect())
}

/// Blows up `p`, returning the new model and coefficients.
///
/// The new curve `E` is exceptional of genus 0 and self-intersection -1.
pub fn blowup(model: &SurfaceModel, coeffs: &Coeffs, p: &PointSpec) -> Result<(SurfaceModel, Coeffs), SurfaceError> {
    let lookup = |l: &str| model.index_of(l).ok_or_else(|| SurfaceError::InvalidPoint(format!("unknown curve {l}")));
    let coeff = |l: &str| coeffs.get(l).cloned().ok_or_else(|| SurfaceError::MissingCoefficient(l.to_string()));
    let (through, a_e): (Vec<usize>, Rational) = match p {
        PointSpec::Generic => (vec![], rat(1)),
        PointSpec::OnCurve(l) => (vec![lookup(l)?], coeff(l)? + rat(1)),
        PointSpec::Node(l1, l2) => {
            let (i, j) = (lookup(l1)?, lookup(l2)?);
            if i == j || model.pair_int[i][j] == 0 {
                return Err(SurfaceError::InvalidPoint(format!("{l1} and {l2} do not meet")));
            }
            (vec![i, j], coeff(l1)? + coeff(l2)? + rat(1))
        }
    };
    let n = model.len();
    let label = model.fresh_label();
    let mut curves = model.curves.clone();
    for &i in &through {
        curves[i].self_int -= 1;
    }
    curves.push(Curve::new(label.clone(), 0, -1, true));
    let mut pair_int: Vec<Vec<u32>> = model.pair_int.iter().map(|row| {
        let mut r = row.clone();
        r.push(0);
        r
    }).collect();
    pair_int.push(vec![0; n + 1]);
    if let [i, j] = through[..] {
        pair_int[i][j] -= 1;
        pair_int[j][i] -= 1;
    }
    for &i in &through {
        pair_int[i][n] = 1;
        pair_int[n][i] = 1;
    }
    let new_model = SurfaceModel { curves, pair_int, c1sq: model.c1sq - 1, c2: model.c2 + 1 };
    let mut new_coeffs = coeffs.clone();
    new_coeffs.insert(label, a_e);
    Ok((new_model, new_coeffs))
}

/// Symmetric pairing on the basis `{curves..., K}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionForm {
    m: Vec<Vec<i64>>,
}

impl IntersectionForm {
    pub fn dim(&self) -> usize {
        self.m.len()
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.m[i][j]
    }

    /// Index of `K` in the basis.
    pub fn k_index(&self) -> usize {
        self.m.len() - 1
    }
}

/// Degree-truncated cohomology element with scalars in `T`.
///
/// `deg1` is indexed by the basis `{curves..., K}`; `deg2` is a multiple of the point class.
#[derive(Debug, Clone, PartialEq)]
pub struct Graded<T> {
    pub deg0: T,
    pub deg1: Vec<T>,
    pub deg2: T,
}

/// Cohomology class with rational coefficients.
pub type CohomClass = Graded<Rational>;

impl<T: Ring> Graded<T> {
    pub fn scalar(c: T, dim: usize) -> Self {
        Graded { deg0: c, deg1: vec![T::zero(); dim], deg2: T::zero() }
    }

    /// `c` times basis element `index` in degree 1.
    pub fn divisor(index: usize, c: T, dim: usize) -> Self {
        let mut deg1 = vec![T::zero(); dim];
        deg1[index] = c;
        Graded { deg0: T::zero(), deg1, deg2: T::zero() }
    }

    pub fn point(c: T, dim: usize) -> Self {
        Graded { deg0: T::zero(), deg1: vec![T::zero(); dim], deg2: c }
    }

    pub fn plus(&self, rhs: &Self) -> Self {
        Graded {
            deg0: self.deg0.plus(&rhs.deg0),
            deg1: self.deg1.iter().zip(&rhs.deg1).map(|(a, b)| a.plus(b)).collect(),
            deg2: self.deg2.plus(&rhs.deg2),
        }
    }

    /// `deg1 . deg1` through the pairing.
    pub fn pair_deg1(a: &[T], b: &[T], form: &IntersectionForm) -> T {
        let mut acc = T::zero();
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                let m = form.get(i, j);
                if m == 0 || y.is_zero() {
                    continue;
                }
                acc = acc.plus(&x.times(y).scale(&rat(m)));
            }
        }
        acc
    }

    /// Product truncated above degree 2.
    pub fn mul(&self, rhs: &Self, form: &IntersectionForm) -> Self {
        let deg1 = self.deg1.iter().zip(&rhs.deg1).map(|(a, b)| self.deg0.times(b).plus(&rhs.deg0.times(a))).collect();
        let deg2 = self
            .deg0
            .times(&rhs.deg2)
            .plus(&self.deg2.times(&rhs.deg0))
            .plus(&Self::pair_deg1(&self.deg1, &rhs.deg1, form));
        Graded { deg0: self.deg0.times(&rhs.deg0), deg1, deg2 }
    }

    /// Product with a factor `1 + f1 D + f2 D^2` where `D` is basis element `index`.
    ///
    /// Equal to [`Graded::mul`] with that factor but avoids the full pairing loop.
    pub fn mul_unit_factor(&self, index: usize, f1: &T, f2: &T, form: &IntersectionForm) -> Self {
        let mut deg1 = self.deg1.clone();
        deg1[index] = deg1[index].plus(&self.deg0.times(f1));
        // A1 . (f1 D) = f1 sum_i A1_i (C_i . D)
        let mut cross = T::zero();
        for (i, x) in self.deg1.iter().enumerate() {
            let m = form.get(i, index);
            if m != 0 && !x.is_zero() {
                cross = cross.plus(&x.scale(&rat(m)));
            }
        }
        let dd = rat(form.get(index, index));
        let deg2 = self.deg2.plus(&self.deg0.times(f2).scale(&dd)).plus(&cross.times(f1));
        Graded { deg0: self.deg0.clone(), deg1, deg2 }
    }

    /// Integral over the surface: the degree-2 coefficient.
    pub fn integrate(&self) -> T {
        self.deg2.clone()
    }
}

/// Integral of a class: its point-class coefficient.
pub fn cohom_integrate<T: Ring>(_model: &SurfaceModel, c: &Graded<T>) -> T {
    c.integrate()
}
