//! Exact `q`-expansions of normalized theta factors.
//!
//! `sigma(t) = (v^(1/2) - v^(-1/2)) P(v)` with `v = e^(2 pi i t)` and
//! `P(v) = prod_n (1 - q^n v)(1 - q^n / v) / (1 - q^n)^2`. `P` has constant
//! term 1, so ratios of `P` factors stay polynomial; all denominators come from
//! the binomials `v^(1/2) - v^(-1/2)` and are tracked by [`BinomFrac`].

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::coeff::{rat, ratio, BinomFrac, ExpRing, Rational, Ring, SFunc, SPoly};
use crate::qseries::QSeries;
use crate::surface::{CohomClass, Graded, IntersectionForm};

use super::ThetaError;

/// `c0 + c1 X + c2 X^2` in a nilpotent `X` with `X^3 = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct DExp<R>(pub [R; 3]);

impl<R: Ring> DExp<R> {
    pub fn constant(c: R) -> Self {
        DExp([c, R::zero(), R::zero()])
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> DExp<S> {
        DExp([f(&self.0[0]), f(&self.0[1]), f(&self.0[2])])
    }
}

impl<R: Ring> Ring for DExp<R> {
    fn zero() -> Self {
        DExp([R::zero(), R::zero(), R::zero()])
    }
    fn one() -> Self {
        Self::constant(R::one())
    }
    fn is_zero(&self) -> bool {
        self.0.iter().all(Ring::is_zero)
    }
    fn plus(&self, rhs: &Self) -> Self {
        DExp([self.0[0].plus(&rhs.0[0]), self.0[1].plus(&rhs.0[1]), self.0[2].plus(&rhs.0[2])])
    }
    fn minus(&self, rhs: &Self) -> Self {
        DExp([self.0[0].minus(&rhs.0[0]), self.0[1].minus(&rhs.0[1]), self.0[2].minus(&rhs.0[2])])
    }
    fn times(&self, rhs: &Self) -> Self {
        let [a0, a1, a2] = &self.0;
        let [b0, b1, b2] = &rhs.0;
        DExp([a0.times(b0), a0.times(b1).plus(&a1.times(b0)), a0.times(b2).plus(&a1.times(b1)).plus(&a2.times(b0))])
    }
    fn negate(&self) -> Self {
        self.map(Ring::negate)
    }
    fn from_rational(r: &Rational) -> Self {
        Self::constant(R::from_rational(r))
    }
}

/// Argument of a sigma factor: `v = y^y w^w e^(x X)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaArg {
    pub y: Rational,
    pub w: Rational,
    pub x: i64,
}

impl SigmaArg {
    /// Pure argument `y^a`.
    pub fn pure(a: Rational) -> Self {
        SigmaArg { y: a, w: rat(0), x: 0 }
    }

    /// Shifted argument `y^a e^X`.
    pub fn shifted(a: Rational) -> Self {
        SigmaArg { y: a, w: rat(0), x: 1 }
    }

    pub fn with_w(mut self, w: Rational) -> Self {
        self.w = w;
        self
    }

    fn is_zero_point(&self) -> bool {
        self.y == rat(0) && self.w == rat(0)
    }
}

/// Terms `(j, c)` of `P(v)` per power of `q`, `v^j` with integer `j`.
type PTable = Vec<Vec<(i64, Rational)>>;

fn p_table(order: usize) -> Arc<PTable> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<PTable>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(t) = cache.lock().unwrap().get(&order) {
        return t.clone();
    }
    let mut acc: QSeries<SPoly> = QSeries::constant(SPoly::one(), order);
    for n in 1..=order {
        let v = |e: i64| SPoly::monomial(rat(-1), e, 1);
        acc = acc.times(&QSeries::new(vec![SPoly::one()], order).plus(&QSeries::monomial(v(1), n, order)));
        acc = acc.times(&QSeries::new(vec![SPoly::one()], order).plus(&QSeries::monomial(v(-1), n, order)));
        // (1 - q^n)^(-2) = sum_k (k + 1) q^(nk)
        let mut inv = vec![SPoly::zero(); order + 1];
        for k in 0..=order / n {
            inv[n * k] = SPoly::constant(rat(k as i64 + 1));
        }
        acc = acc.times(&QSeries::new(inv, order));
    }
    let table: PTable = (0..=order).map(|k| acc.coefficient(k).terms().map(|(e, c)| (e, c.clone())).collect()).collect();
    let table = Arc::new(table);
    cache.lock().unwrap().insert(order, table.clone());
    table
}

/// `P(v)` at `v = y^y w^w e^(x X)`, expanded to `X^2`.
fn p_at<R: ExpRing>(arg: &SigmaArg, order: usize) -> QSeries<DExp<R>> {
    let table = p_table(order);
    let coeffs = table
        .iter()
        .map(|terms| {
            let mut c = DExp::<R>::zero();
            for (j, cj) in terms {
                let mono = R::y_w_power(&(&arg.y * rat(*j)), &(&arg.w * rat(*j))).scale(cj);
                let jx = rat(j * arg.x);
                let half_sq = &jx * &jx * ratio(1, 2);
                c = c.plus(&DExp([mono.clone(), mono.scale(&jx), mono.scale(&half_sq)]));
            }
            c
        })
        .collect();
    QSeries::new(coeffs, order)
}

/// `v^(1/2) - v^(-1/2)` and `v^(1/2) + v^(-1/2)` at `v = y^y w^w`.
fn half_powers<R: ExpRing>(arg: &SigmaArg) -> (R, R) {
    let half = ratio(1, 2);
    let hy = &arg.y * &half;
    let hw = &arg.w * &half;
    let up = R::y_w_power(&hy, &hw);
    let down = R::y_w_power(&-hy, &-hw);
    (up.minus(&down), up.plus(&down))
}

/// `v^(1/2) - v^(-1/2)` at the shifted argument, to `X^2`.
fn leading<R: ExpRing>(arg: &SigmaArg) -> DExp<R> {
    let (minus, plus) = half_powers::<R>(arg);
    let x = rat(arg.x);
    DExp([minus.clone(), plus.scale(&(&x * ratio(1, 2))), minus.scale(&(&x * &x * ratio(1, 8)))])
}

/// Inverse of [`leading`]; needs `v != 1` at `X = 0`.
fn leading_inverse<R: ExpRing>(arg: &SigmaArg) -> Result<DExp<BinomFrac<R>>, ThetaError> {
    if arg.is_zero_point() {
        return Err(ThetaError::ZeroArgument);
    }
    let inv = BinomFrac::<R>::inverse_binomial(&arg.y, &arg.w, 1).expect("v != 1");
    let (_, plus) = half_powers::<R>(arg);
    let x = rat(arg.x);
    let l1 = BinomFrac::from_num(plus.scale(&(&x * ratio(1, 2))));
    let inv2 = inv.times(&inv);
    let c1 = l1.times(&inv2).negate();
    // (l1^2 - l0 l2) / l0^3 with l2 = x^2 l0 / 8
    let c2 = l1.times(&l1).times(&inv2).times(&inv).minus(&inv.scale(&(&x * &x * ratio(1, 8))));
    Ok(DExp([inv, c1, c2]))
}

/// `sigma` at a shifted argument as an `X`-expansion with polynomial coefficients.
pub fn sigma_expansion<R: ExpRing>(arg: &SigmaArg, order: usize) -> QSeries<DExp<R>> {
    let l = leading::<R>(arg);
    p_at::<R>(arg, order).map(|c| c.times(&l))
}

/// `sigma(a z)` as an exact series; odd in `a`.
pub fn sigma_pure(a: &Rational, order: usize) -> QSeries<SPoly> {
    sigma_expansion::<SPoly>(&SigmaArg::pure(a.clone()), order).map(|c| c.0[0].clone())
}

/// `sigma(D + a z)` for a divisor class `D`, truncated at degree 2.
pub fn sigma_shifted(
    d: &CohomClass,
    a: &Rational,
    order: usize,
    form: &IntersectionForm,
) -> Result<Graded<QSeries<SPoly>>, ThetaError> {
    if *a == rat(0) {
        return Err(ThetaError::ZeroArgument);
    }
    assert!(d.deg0 == rat(0), "shift must be nilpotent");
    let e = sigma_expansion::<SPoly>(&SigmaArg::shifted(a.clone()), order);
    let c = |i: usize| e.map(|x| x.0[i].clone());
    let dd = Graded::pair_deg1(&d.deg1, &d.deg1, form);
    Ok(Graded {
        deg0: c(0),
        deg1: d.deg1.iter().map(|x| c(1).scale(x)).collect(),
        deg2: c(1).scale(&d.deg2).plus(&c(2).scale(&dd)),
    })
}

/// `prod sigma(num) / prod sigma(den)` with equally many factors on each side.
///
/// The theta prefactor `-i q^(1/8) prod (1 - q^n)^3` cancels only because the
/// ratio is balanced, which is asserted.
pub fn theta_ratio<R: ExpRing>(
    num: &[SigmaArg],
    den: &[SigmaArg],
    order: usize,
) -> Result<QSeries<DExp<BinomFrac<R>>>, ThetaError> {
    assert_eq!(num.len(), den.len(), "unbalanced theta ratio");
    let mut lead = DExp::<BinomFrac<R>>::one();
    for arg in den {
        lead = lead.times(&leading_inverse::<R>(arg)?);
    }
    if num.iter().any(|a| a.is_zero_point() && a.x == 0) {
        return Ok(QSeries::new(Vec::new(), order));
    }
    for arg in num {
        lead = lead.times(&leading::<R>(arg).map(|c| BinomFrac::from_num(c.clone())));
    }
    let mut p_num = QSeries::<DExp<R>>::constant(DExp::one(), order);
    for arg in num {
        p_num = p_num.times(&p_at(arg, order));
    }
    let mut p_den = QSeries::<DExp<R>>::constant(DExp::one(), order);
    for arg in den {
        p_den = p_den.times(&p_at(arg, order));
    }
    let p_den = p_den.invert_monic().expect("P has constant term 1");
    let p = p_num.times(&p_den);
    Ok(p.map(|c| c.map(|x| BinomFrac::from_num(x.clone())).times(&lead)))
}

/// `Phi0, Phi1, Phi2` of `Phi(W) = W sigma(W - z) / sigma(W)` expanded in `W`.
///
/// The smooth integrand is `Phi0^2 + Phi0 Phi1 c1 + Phi1^2 c2 + Phi0 Phi2 (c1^2 - 2 c2)`.
pub fn chern_genus_coeffs<R: ExpRing>(order: usize) -> [QSeries<R>; 3] {
    let minus_z = SigmaArg::shifted(rat(-1));
    let zero = SigmaArg::shifted(rat(0));
    // W / (e^(W/2) - e^(-W/2)) = 1 - W^2/24
    let w_over_l = DExp([R::one(), R::zero(), R::from_rational(&ratio(-1, 24))]);
    let lead = leading::<R>(&minus_z).times(&w_over_l);
    let p_den = p_at::<R>(&zero, order).invert_monic().expect("P has constant term 1");
    let phi = p_at::<R>(&minus_z, order).times(&p_den).map(|c| c.times(&lead));
    [0, 1, 2].map(|i| phi.map(|c| c.0[i].clone()))
}

/// Factor `sigma(C - (a+1)z) sigma(z) / (sigma(C - z) sigma((a+1)z))` with `a` perturbed by `eps b`.
///
/// Returns the coefficients of `C` and `C^2`; the constant term is exactly 1.
pub fn divisor_factor<R: ExpRing>(
    a: &Rational,
    b: &Rational,
    order: usize,
) -> Result<QSeries<DExp<BinomFrac<R>>>, ThetaError> {
    let a1 = a + rat(1);
    if a1 == rat(0) && *b == rat(0) {
        return Err(ThetaError::LogCanonicalPole);
    }
    let num = [SigmaArg::shifted(-a1.clone()).with_w(-b.clone()), SigmaArg::pure(rat(1))];
    let den = [SigmaArg::shifted(rat(-1)), SigmaArg::pure(a1).with_w(b.clone())];
    theta_ratio(&num, &den, order)
}

/// Factor `sigma(C + 2z) sigma(z) / (sigma(C + z) sigma(2z))` of a coefficient `-1` curve.
pub fn minus_one_factor<R: ExpRing>(order: usize) -> QSeries<DExp<BinomFrac<R>>> {
    let num = [SigmaArg::shifted(rat(2)), SigmaArg::pure(rat(1))];
    let den = [SigmaArg::shifted(rat(1)), SigmaArg::pure(rat(2))];
    theta_ratio(&num, &den, order).expect("nonzero pure arguments")
}

/// `phi(a) = sigma((a+2)z) sigma(a z) / sigma((a+1)z)^2` before cancellation.
pub fn phi_binom(a: &Rational, order: usize) -> Result<QSeries<BinomFrac<SPoly>>, ThetaError> {
    let a1 = a + rat(1);
    if a1 == rat(0) {
        return Err(ThetaError::LogCanonicalPole);
    }
    let num = [SigmaArg::pure(a + rat(2)), SigmaArg::pure(a.clone())];
    let den = [SigmaArg::pure(a1.clone()), SigmaArg::pure(a1)];
    Ok(theta_ratio::<SPoly>(&num, &den, order)?.map(|c| c.0[0].clone()))
}

/// `phi(a)` in canonical form.
pub fn phi_correction(a: &Rational, order: usize) -> Result<QSeries<SFunc>, ThetaError> {
    Ok(phi_binom(a, order)?.map(BinomFrac::to_sfunc))
}
