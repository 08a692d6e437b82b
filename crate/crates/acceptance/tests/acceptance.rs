//! Acceptance criteria, one `PASS`/`FAIL` line each.
//!
//! Runs without the libtest harness so every criterion is evaluated and
//! reported even when an earlier one fails; the exit status is nonzero if any fails.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::time::Instant;

use ellgenus::coeff::{rat, ratio, Rational, SFunc, SPoly};
use ellgenus::genus::corpus::{random_bridge_configuration, random_configuration, rng, simple_elliptic_ample, star};
use ellgenus::genus::{
    chi_y, ell, hirzebruch_chi_y, localization_p1, localization_p1_exact, perturbed_limit, singular_coeffs, verify_blowup_invariance_all,
    verify_holomorphy, verify_residue_case, veys_chi_y, ResidueCase,
};
use ellgenus::graph::{Interpretation, ResolutionGraph};
use ellgenus::surface::{solve_discrepancies, Coeffs, SurfaceModel};
use ellgenus::theta::{eval_sigma_series, sigma_numeric, sigma_pure, theta_identity_residuals, DEFAULT_TOL};
use num_complex::Complex64;
use num_traits::ToPrimitive;
use rand::Rng;

const SEED: u64 = 7;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

/// Blow-up invariance over a corpus of 50 configurations at every point, exact at Q = 5.
fn blowup_invariance() -> Outcome {
    let flags = Interpretation::default();
    let mut r = rng(SEED);
    let mut per_case: BTreeMap<u8, (usize, usize)> = BTreeMap::new();
    let mut first_failure = None;
    let mut predicted = 0;
    for i in 0..50 {
        let c = random_configuration(&mut r);
        for rep in verify_blowup_invariance_all(&c.model, &c.coeffs, 5, &flags).expect("corpus configurations are admissible") {
            let e = per_case.entry(rep.case.number()).or_default();
            e.1 += 1;
            if rep.equal {
                e.0 += 1;
            } else {
                predicted += rep.naive_change_matches as usize;
                first_failure.get_or_insert(format!("config {i} at {} (CASE {})", rep.point, rep.case.number()));
            }
        }
    }
    let covered = (1..=5).all(|k| per_case.contains_key(&k));
    let (eq, total) = per_case.values().fold((0, 0), |(a, b), &(x, y)| (a + x, b + y));
    let cases: Vec<String> = per_case.iter().map(|(k, (x, y))| format!("CASE{k} {x}/{y}")).collect();
    let mut detail = format!("{eq}/{total} blow-ups equal at Q=5 [{}]", cases.join(", "));
    if let Some(f) = first_failure {
        detail += &format!("; first difference {f}; {predicted}/{} failures have the predicted naive change", total - eq);
    }
    if !covered {
        detail += "; not all five cases covered";
    }
    outcome(covered && eq == total, detail)
}

/// Star: discrepancies, vanishing correction and holomorphy.
fn star_example() -> Outcome {
    let model = star();
    let solved = solve_discrepancies(&model).expect("star is negative definite");
    let want: Coeffs = [("E1", -1), ("E2", -1), ("E3", -1), ("E4", -2)].into_iter().map(|(l, a)| (l.to_string(), rat(a))).collect();
    let coeffs = singular_coeffs(&model, &Coeffs::new()).expect("star solves");
    let res = ell(&model, &coeffs, 5, &Interpretation::default()).expect("star genus");
    let correction_zero = (0..=res.order).all(|k| res.correction.coefficient(k) == SFunc::from_poly(SPoly::from_terms(1, [])));
    let h = verify_holomorphy(&model, &res, Complex64::new(0.0, 1.0)).expect("numeric genus");
    let approach: Vec<String> = h.approach.iter().map(|(d, v)| format!("{d:e}:{v:.4e}")).collect();
    let ratios: Vec<String> = h.approach.windows(2).map(|w| format!("{:.4}", w[0].1 / w[1].1)).collect();
    outcome(
        solved == want && correction_zero && h.pass(),
        format!(
            "discrepancies={} correction-zero={correction_zero} pole-at-z0={} |theta(2z)Ell| at tau/2+delta [{}], decade ratios [{}] (need >= 10)",
            solved == want,
            h.pole_at_z0.is_some(),
            approach.join(", "),
            ratios.join(", ")
        ),
    )
}

/// `Ell(P^1, a1 p1 + a2 p2) = 0` for `a1 + a2 = -2`.
fn localization() -> Outcome {
    let a1s = [rat(0), rat(-2), ratio(1, 3), ratio(-5, 2), rat(2)];
    let exact = a1s.iter().all(|a1| localization_p1_exact(a1, &(rat(-2) - a1), 5).map(|s| (0..=5).all(|k| s.coefficient(k) == SFunc::from_poly(SPoly::from_terms(1, [])))).unwrap_or(false));
    let mut r = rng(SEED);
    let mut worst: f64 = 0.0;
    for _ in 0..5 {
        let t = Complex64::new(r.gen_range(-0.45..0.45), r.gen_range(-0.1..0.1));
        let z = Complex64::new(r.gen_range(0.05..0.3), r.gen_range(-0.05..0.05));
        let tau = Complex64::new(r.gen_range(-0.5..0.5), r.gen_range(0.7..1.3));
        let a1 = &a1s[r.gen_range(0..a1s.len())];
        let v = localization_p1(a1, &(rat(-2) - a1), t, z, tau).expect("no pole").norm();
        worst = worst.max(v);
    }
    outcome(exact && worst < 1e-9, format!("exact-zero-at-Q=5={exact} numeric max |sum| over 5 points {worst:.2e} (< 1e-9)"))
}

/// Stringy chi_y on bridge-only configurations.
fn chi_y_agreement() -> Outcome {
    let mut r = rng(SEED);
    let mut agree = 0;
    let total = 20;
    for _ in 0..total {
        let bc = random_bridge_configuration(&mut r);
        let (model, coeffs) = (&bc.config.model, &bc.config.coeffs);
        let res = ell(model, coeffs, 0, &Interpretation::default()).expect("bridge genus");
        let g = ResolutionGraph::from_model(model, coeffs).expect("graph");
        if veys_chi_y(&g, &hirzebruch_chi_y(model.c1sq(), model.c2())).is_ok_and(|v| v == chi_y(&res)) {
            agree += 1;
        }
    }
    outcome(agree == total, format!("{agree}/{total} bridge configurations agree exactly"))
}

/// Perturbed limits on bridge configurations and the simple elliptic model.
fn perturbation() -> Outcome {
    let flags = Interpretation::default();
    let mut cases: Vec<(SurfaceModel, Coeffs, Coeffs)> = Vec::new();
    let mut r = rng(SEED);
    for _ in 0..20 {
        let b = random_bridge_configuration(&mut r);
        cases.push((b.config.model, b.config.coeffs, b.perturbation));
    }
    for d in 1..=3 {
        for m in 1..=3 {
            let (model, b) = simple_elliptic_ample(d, m);
            let coeffs = singular_coeffs(&model, &Coeffs::new()).expect("simple elliptic solves");
            cases.push((model, coeffs, b));
        }
    }
    let (mut exists, mut equal) = (0, 0);
    for (model, coeffs, b) in &cases {
        if let Ok(limit) = perturbed_limit(model, coeffs, b, 3) {
            exists += 1;
            equal += (limit == ell(model, coeffs, 3, &flags).expect("genus").series) as usize;
        }
    }
    let n = cases.len();
    outcome(exists == n && equal == n, format!("limit exists {exists}/{n}, equals ell at Q=3 {equal}/{n} (20 bridge, 9 simple elliptic)"))
}

/// Theta identities at random points; exact vs numeric sigma at `|q| = 0.1`.
fn theta_identities() -> Outcome {
    let mut r = rng(SEED);
    let mut worst_identity: f64 = 0.0;
    for _ in 0..5 {
        let t = Complex64::new(r.gen_range(-0.5..0.5), r.gen_range(-0.3..0.3));
        let tau = Complex64::new(r.gen_range(-0.5..0.5), r.gen_range(0.7..1.5));
        for (_, e) in theta_identity_residuals(t, tau, DEFAULT_TOL).expect("tau in upper half plane") {
            worst_identity = worst_identity.max(e);
        }
    }
    let pool = [rat(1), rat(2), ratio(1, 2), rat(-3), ratio(5, 3), ratio(-1, 3), ratio(3, 2)];
    let mut worst_backend: f64 = 0.0;
    for _ in 0..5 {
        let a: &Rational = &pool[r.gen_range(0..pool.len())];
        let z = Complex64::new(r.gen_range(0.0..1.0), r.gen_range(-0.1..0.1));
        let tau = Complex64::new(r.gen_range(-0.5..0.5), -(0.1f64).ln() / (2.0 * PI));
        let exact = eval_sigma_series(&sigma_pure(a, 5), z, tau).expect("tau");
        let numeric = sigma_numeric(a.to_f64().expect("finite") * z, tau, DEFAULT_TOL).expect("tau");
        worst_backend = worst_backend.max((exact - numeric).norm());
    }
    outcome(
        worst_identity < 1e-8 && worst_backend < 1e-6,
        format!("identities max error {worst_identity:.2e} (< 1e-8); backend max error at |q|=0.1, Q=5 {worst_backend:.2e} (< 1e-6)"),
    )
}

/// Residues of the four blow-up cases.
fn residues() -> Outcome {
    let mut r = rng(SEED);
    let (mut pass, mut total, mut worst) = (0, 0, 0.0f64);
    for _ in 0..5 {
        let z = Complex64::new(r.gen_range(0.08..0.3), r.gen_range(-0.08..0.08));
        let tau = Complex64::new(r.gen_range(-0.5..0.5), r.gen_range(0.7..1.5));
        let a = r.gen_range(-3.5..2.5);
        let a1 = r.gen_range(-3.5..2.5);
        for case in [ResidueCase::One, ResidueCase::Two { a }, ResidueCase::Three { a1, a2: -2.0 - a1 }, ResidueCase::Four] {
            let rep = verify_residue_case(case, z, tau).expect("residue");
            total += 1;
            pass += rep.pass as usize;
            worst = worst.max(rep.error);
        }
    }
    outcome(pass == total, format!("{pass}/{total} residues within tolerance (1e-7, CASE 4 1e-8), max error {worst:.2e}"))
}

/// `chi_{-y}` from the Hodge diamond, independent of the Noether-type formulas.
fn hodge_chi(h: [[i64; 3]; 3]) -> SFunc {
    let chi = |p: usize| h[p][0] - h[p][1] + h[p][2];
    SFunc::from_poly(SPoly::from_terms(1, [(0, rat(chi(0))), (1, rat(-chi(1))), (2, rat(chi(2)))]))
}

/// Smooth reduction against Hodge numbers.
fn smooth_reduction() -> Outcome {
    let cases = [
        ((8, 4), [[1, 0, 0], [0, 2, 0], [0, 0, 1]]),
        ((9, 3), [[1, 0, 0], [0, 1, 0], [0, 0, 1]]),
        ((0, 24), [[1, 0, 1], [0, 20, 0], [1, 0, 1]]),
    ];
    let mut lines = Vec::new();
    let mut ok = true;
    for ((c1sq, c2), h) in cases {
        let res = ell(&SurfaceModel::smooth(c1sq, c2), &Coeffs::new(), 0, &Interpretation::default()).expect("smooth genus");
        let got = chi_y(&res);
        let good = got == hodge_chi(h);
        ok &= good;
        lines.push(format!("({c1sq},{c2}): {}", got.render()));
    }
    outcome(ok, lines.join("; "))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("1 blow-up invariance", blowup_invariance),
        ("2 star example", star_example),
        ("3 localization", localization),
        ("4 chi_y agreement", chi_y_agreement),
        ("5 perturbation limits", perturbation),
        ("6 theta identities and backends", theta_identities),
        ("7 residues", residues),
        ("8 smooth reduction", smooth_reduction),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        let start = Instant::now();
        let o = f();
        failed += !o.pass as usize;
        println!("{} criterion {name}: {} ({:.1}s)", if o.pass { "PASS" } else { "FAIL" }, o.detail, start.elapsed().as_secs_f64());
    }
    println!("{}/8 criteria passed", 8 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
