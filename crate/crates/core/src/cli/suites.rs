//! Verification suites behind `ellgenus verify`.

use std::f64::consts::PI;
use std::fmt::Write as _;

use num_complex::Complex64;
use num_traits::ToPrimitive;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::coeff::{rat, ratio, Rational};
use crate::genus::corpus::{random_bridge_configuration, random_configuration, rng, simple_elliptic, simple_elliptic_ample, star};
use crate::genus::{ell, perturbed_limit, singular_coeffs, verify_blowup_invariance_all, verify_holomorphy, verify_residue_case, ResidueCase};
use crate::graph::Interpretation;
use crate::surface::{Coeffs, SurfaceModel};
use crate::theta::{eval_sigma_series, sigma_numeric, sigma_pure, theta_identity_residuals, DEFAULT_TOL};

use super::{effective_coeffs, CliError, ConfigFile};

/// One line of a report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub pass: bool,
    pub name: String,
    pub detail: String,
}

impl Check {
    fn new(pass: bool, name: impl Into<String>, detail: impl Into<String>) -> Self {
        Check { pass, name: name.into(), detail: detail.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SuiteReport {
    pub checks: Vec<Check>,
    /// First failing configuration, as a config file.
    pub counterexample: Option<String>,
}

impl SuiteReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    /// `PASS|FAIL <name> <detail>` lines, a summary, then the counterexample if any.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let _ = writeln!(out, "{} {} {}", if c.pass { "PASS" } else { "FAIL" }, c.name, c.detail);
        }
        let passed = self.checks.iter().filter(|c| c.pass).count();
        let _ = writeln!(out, "{passed}/{} checks passed", self.checks.len());
        if let Some(cx) = &self.counterexample {
            let _ = write!(out, "# first counterexample\n{cx}");
        }
        out
    }
}

pub(super) fn invariance(
    file: Option<&ConfigFile>,
    seed: u64,
    count: usize,
    order: usize,
    flags: &Interpretation,
) -> Result<SuiteReport, CliError> {
    let configs: Vec<(SurfaceModel, Coeffs)> = match file {
        Some(cfg) => vec![(cfg.model.clone(), effective_coeffs(cfg)?)],
        None => {
            let mut r = rng(seed);
            (0..count).map(|_| random_configuration(&mut r)).map(|c| (c.model, c.coeffs)).collect()
        }
    };
    let mut report = SuiteReport::default();
    for (i, (model, coeffs)) in configs.iter().enumerate() {
        for rep in verify_blowup_invariance_all(model, coeffs, order, flags)? {
            let mut detail = format!("config={i} point={} {}", rep.point, rep.case);
            if let Some(k) = rep.first_difference {
                let _ = write!(detail, " first-difference=q^{k} naive-change-as-predicted={}", rep.naive_change_matches);
                if report.counterexample.is_none() {
                    let text = ConfigFile::new(model.clone(), coeffs.clone()).render();
                    report.counterexample = Some(format!("# blow up at {}\n{text}", rep.point));
                }
            }
            report.checks.push(Check::new(rep.equal, "invariance", detail));
        }
    }
    Ok(report)
}

fn random_point(r: &mut impl Rng) -> (Complex64, Complex64) {
    let z = Complex64::new(r.gen_range(0.08..0.3), r.gen_range(-0.08..0.08));
    let tau = Complex64::new(r.gen_range(-0.5..0.5), r.gen_range(0.7..1.5));
    (z, tau)
}

pub(super) fn residues(seed: u64, count: usize) -> Result<SuiteReport, CliError> {
    let mut r = rng(seed);
    let mut points = vec![(Complex64::new(0.17, 0.05), Complex64::new(0.0, 0.8))];
    points.extend((0..count.saturating_sub(1)).map(|_| random_point(&mut r)));
    let mut report = SuiteReport::default();
    for (z, tau) in points {
        let a = r.gen_range(-3.5..2.5);
        let a1 = r.gen_range(-3.5..2.5);
        for case in [ResidueCase::One, ResidueCase::Two { a }, ResidueCase::Three { a1, a2: -2.0 - a1 }, ResidueCase::Four] {
            let rep = verify_residue_case(case, z, tau).map_err(|e| CliError::Math(e.to_string()))?;
            report.checks.push(Check::new(
                rep.pass,
                "residue",
                format!("{case:?} z={z:.4} tau={tau:.4} error={:.2e} tolerance={:.0e}", rep.error, rep.tolerance),
            ));
        }
    }
    Ok(report)
}

/// Rationals used for backend agreement samples.
pub(crate) fn backend_pool() -> Vec<Rational> {
    vec![rat(1), rat(2), ratio(1, 2), rat(-3), ratio(5, 3), ratio(-1, 3), ratio(3, 2)]
}

/// `|exact sigma(a z) at Q - numeric sigma(a z)|` at `|q| = q_abs`.
pub fn backend_error(a: &Rational, z: Complex64, re_tau: f64, q_abs: f64, order: usize) -> f64 {
    let tau = Complex64::new(re_tau, -q_abs.ln() / (2.0 * PI));
    let exact = eval_sigma_series(&sigma_pure(a, order), z, tau).expect("tau in upper half plane");
    let numeric = sigma_numeric(a.to_f64().expect("finite") * z, tau, DEFAULT_TOL).expect("tau in upper half plane");
    (exact - numeric).norm()
}

pub(super) fn theta(seed: u64, count: usize) -> Result<SuiteReport, CliError> {
    let mut r = rng(seed);
    let mut report = SuiteReport::default();
    for _ in 0..count {
        let t = Complex64::new(r.gen_range(-0.5..0.5), r.gen_range(-0.3..0.3));
        let tau = Complex64::new(r.gen_range(-0.5..0.5), r.gen_range(0.7..1.5));
        for (name, err) in theta_identity_residuals(t, tau, DEFAULT_TOL).map_err(|e| CliError::Math(e.to_string()))? {
            report.checks.push(Check::new(err < 1e-8, "theta", format!("{name} t={t:.4} tau={tau:.4} error={err:.2e}")));
        }
    }
    let pool = backend_pool();
    for _ in 0..count {
        let a = pool.choose(&mut r).unwrap().clone();
        let z = Complex64::new(r.gen_range(0.0..1.0), r.gen_range(-0.1..0.1));
        let re_tau = r.gen_range(-0.5..0.5);
        let err = backend_error(&a, z, re_tau, 0.1, 5);
        report.checks.push(Check::new(
            err < 1e-6,
            "backend",
            format!("a={a} z={z:.4} |q|=0.1 Q=5 error={err:.2e}"),
        ));
    }
    Ok(report)
}

pub(super) fn holomorphy(file: Option<&ConfigFile>, flags: &Interpretation) -> Result<SuiteReport, CliError> {
    let cases: Vec<(String, SurfaceModel, Coeffs)> = match file {
        Some(cfg) => vec![("file".into(), cfg.model.clone(), effective_coeffs(cfg)?)],
        None => {
            let mut v = vec![("star".to_string(), star(), singular_coeffs(&star(), &Coeffs::new())?)];
            for d in 1..=3 {
                let m = simple_elliptic(d);
                let c = singular_coeffs(&m, &Coeffs::new())?;
                v.push((format!("simple-elliptic-{d}"), m, c));
            }
            v
        }
    };
    let tau = Complex64::new(0.0, 1.0);
    let mut report = SuiteReport::default();
    for (name, model, coeffs) in cases {
        let res = ell(&model, &coeffs, 5, flags)?;
        let h = verify_holomorphy(&model, &res, tau)?;
        let approach: Vec<String> = h.approach.iter().map(|(d, v)| format!("{d:e}:{v:.4e}")).collect();
        report.checks.push(Check::new(
            h.pass(),
            "holomorphy",
            format!(
                "{name} pole-at-z0={} decay-at-tau/2=[{}] tenfold-per-decade={}",
                h.pole_at_z0.map_or_else(|| "none".to_string(), |k| format!("q^{k}")),
                approach.join(", "),
                h.decays
            ),
        ));
    }
    Ok(report)
}

pub(super) fn perturbation(
    file: Option<&ConfigFile>,
    seed: u64,
    count: usize,
    order: usize,
    flags: &Interpretation,
) -> Result<SuiteReport, CliError> {
    let cases: Vec<(String, SurfaceModel, Coeffs, Coeffs)> = match file {
        Some(cfg) => vec![("file".into(), cfg.model.clone(), effective_coeffs(cfg)?, cfg.perturbation.clone())],
        None => {
            let mut r = rng(seed);
            let mut v: Vec<_> = (0..count)
                .map(|i| {
                    let b = random_bridge_configuration(&mut r);
                    (format!("bridge-{i}"), b.config.model, b.config.coeffs, b.perturbation)
                })
                .collect();
            for d in 1..=3 {
                for m in 1..=3 {
                    let (model, b) = simple_elliptic_ample(d, m);
                    let c = singular_coeffs(&model, &Coeffs::new())?;
                    v.push((format!("simple-elliptic-{d}-ample-{m}"), model, c, b));
                }
            }
            v
        }
    };
    let mut report = SuiteReport::default();
    for (name, model, coeffs, b) in cases {
        let expected = ell(&model, &coeffs, order, flags)?.series;
        let (pass, detail) = match perturbed_limit(&model, &coeffs, &b, order) {
            Ok(limit) => (limit == expected, format!("limit-exists=true equals-ell={}", limit == expected)),
            Err(e) => (false, format!("limit-exists=false ({e})")),
        };
        if !pass && report.counterexample.is_none() {
            let mut cfg = ConfigFile::new(model.clone(), coeffs.clone());
            cfg.perturbation = b.clone();
            report.counterexample = Some(cfg.render());
        }
        report.checks.push(Check::new(pass, "perturbation", format!("{name} Q={order} {detail}")));
    }
    Ok(report)
}
