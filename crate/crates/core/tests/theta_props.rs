//! Theta and sigma: parity, the phi symmetry, modularity and agreement of the two backends.

use std::f64::consts::PI;

use ellgenus::coeff::{ratio, Rational, Ring};
use ellgenus::genus::phi_numeric;
use ellgenus::theta::{eval_sigma_series, phi_correction, sigma_numeric, sigma_pure, theta_identity_residuals, theta_numeric, DEFAULT_TOL};
use num_complex::Complex64;
use num_traits::ToPrimitive;
use proptest::prelude::*;

const I: Complex64 = Complex64::new(0.0, 1.0);

fn rational() -> impl Strategy<Value = Rational> {
    (-12i64..13, 1i64..5).prop_map(|(p, q)| ratio(p, q))
}

fn point() -> impl Strategy<Value = (Complex64, Complex64)> {
    (-0.5f64..0.5, -0.3f64..0.3, -0.5f64..0.5, 0.7f64..1.5)
        .prop_map(|(a, b, c, d)| (Complex64::new(a, b), Complex64::new(c, d)))
}

/// Independent oracle: `theta_1(t) = 2 sum_n (-1)^n q^((2n+1)^2/8) sin((2n+1) pi t)`.
fn theta_series(t: Complex64, tau: Complex64) -> Complex64 {
    (0..40)
        .map(|n| {
            let k = (2 * n + 1) as f64;
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            2.0 * sign * (2.0 * PI * I * tau * k * k / 8.0).exp() * (k * PI * t).sin()
        })
        .sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn sigma_is_odd(a in rational()) {
        prop_assert_eq!(sigma_pure(&(-a.clone()), 5), sigma_pure(&a, 5).negate());
    }

    #[test]
    fn phi_symmetric(a in rational()) {
        prop_assume!(a != ratio(-1, 1));
        let b = ratio(-2, 1) - &a;
        prop_assert_eq!(phi_correction(&a, 4).unwrap(), phi_correction(&b, 4).unwrap());
    }

    #[test]
    fn theta_matches_series_oracle((t, tau) in point()) {
        let err = (theta_numeric(t, tau, DEFAULT_TOL).unwrap() - theta_series(t, tau)).norm();
        prop_assert!(err < 1e-12, "error {err:e}");
    }

    #[test]
    fn theta_identities((t, tau) in point()) {
        for (name, err) in theta_identity_residuals(t, tau, DEFAULT_TOL).unwrap() {
            prop_assert!(err < 1e-8, "{name}: {err:e}");
        }
    }

    #[test]
    fn phi_numeric_symmetric(a in rational(), (z, tau) in point()) {
        prop_assume!(a != ratio(-1, 1));
        let z = z * 0.5 + Complex64::new(0.05, 0.0);
        let b = ratio(-2, 1) - &a;
        let x = phi_numeric(&a, z, tau);
        let y = phi_numeric(&b, z, tau);
        if let (Ok(x), Ok(y)) = (x, y) {
            prop_assert!((x - y).norm() <= 1e-9 * (1.0 + x.norm()), "{x} vs {y}");
        }
    }

    /// Truncated exact series against the full product at small `|q|`, for `|a| <= 3`.
    #[test]
    fn backends_agree_near_cusp(a in (-9i64..10, 1i64..4).prop_map(|(p, q)| ratio(p, q)), re in 0.0f64..1.0, im in -0.1f64..0.1, re_tau in -0.5f64..0.5) {
        let z = Complex64::new(re, im);
        let tau = Complex64::new(re_tau, -(0.01f64).ln() / (2.0 * PI));
        let exact = eval_sigma_series(&sigma_pure(&a, 5), z, tau).unwrap();
        let numeric = sigma_numeric(a.to_f64().unwrap() * z, tau, DEFAULT_TOL).unwrap();
        prop_assert!((exact - numeric).norm() < 1e-6 * (1.0 + numeric.norm()), "{exact} vs {numeric}");
    }
}

#[test]
fn sigma_normalization() {
    // sigma'(0) = 2 pi i, from the leading factor v^(1/2) - v^(-1/2).
    let tau = Complex64::new(0.1, 0.9);
    let h = 1e-6;
    let d = (sigma_numeric(Complex64::new(h, 0.0), tau, DEFAULT_TOL).unwrap()
        - sigma_numeric(Complex64::new(-h, 0.0), tau, DEFAULT_TOL).unwrap())
        / (2.0 * h);
    assert!((d - 2.0 * PI * I).norm() < 1e-6, "{d}");
}
