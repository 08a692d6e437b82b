//! Ring and field laws for the coefficient tower and truncated q-series.

use ellgenus::coeff::{rat, ratio, Field, Rational, Ring, SFunc, SPoly};
use ellgenus::qseries::QSeries;
use proptest::prelude::*;

fn spoly() -> impl Strategy<Value = SPoly> {
    (prop_oneof![Just(1u64), Just(2), Just(3)], prop::collection::vec((-4i64..5, -3i64..4), 0..4))
        .prop_map(|(root, terms)| SPoly::from_terms(root, terms.into_iter().map(|(e, c)| (e, rat(c)))))
}

fn sfunc() -> impl Strategy<Value = SFunc> {
    (spoly(), spoly()).prop_filter_map("nonzero denominator", |(n, d)| SFunc::new(n, d).ok())
}

fn series() -> impl Strategy<Value = QSeries<Rational>> {
    (prop::collection::vec((-5i64..6, 1i64..4), 0..5), 2usize..6)
        .prop_map(|(c, order)| QSeries::new(c.into_iter().map(|(p, q)| ratio(p, q)).collect(), order))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sfunc_field_laws(a in sfunc(), b in sfunc(), c in sfunc()) {
        prop_assert_eq!(a.plus(&b), b.plus(&a));
        prop_assert_eq!(a.times(&b), b.times(&a));
        prop_assert_eq!(a.plus(&b).plus(&c), a.plus(&b.plus(&c)));
        prop_assert_eq!(a.times(&b).times(&c), a.times(&b.times(&c)));
        prop_assert_eq!(a.times(&b.plus(&c)), a.times(&b).plus(&a.times(&c)));
        prop_assert!(a.minus(&a).is_zero());
        if let Some(inv) = a.inverse() {
            prop_assert!(a.times(&inv).is_one());
            prop_assert_eq!(inv.inverse().unwrap(), a.clone());
        } else {
            prop_assert!(a.is_zero());
        }
    }

    #[test]
    fn sfunc_results_are_canonical(a in sfunc(), b in sfunc()) {
        prop_assert!(a.is_canonical());
        prop_assert!(a.plus(&b).is_canonical());
        prop_assert!(a.times(&b).is_canonical());
        if let Some(q) = a.divide(&b) {
            prop_assert!(q.is_canonical());
            prop_assert_eq!(q.times(&b), a.clone());
        }
    }

    #[test]
    fn equal_fractions_have_equal_forms(n in spoly(), d in spoly(), k in spoly()) {
        prop_assume!(!d.is_zero() && !k.is_zero());
        let x = SFunc::new(n.clone(), d.clone()).unwrap();
        let y = SFunc::new(n.times(&k), d.times(&k)).unwrap();
        prop_assert_eq!(x.render(), y.render());
        prop_assert_eq!(x, y);
    }

    #[test]
    fn qseries_ring_laws(a in series(), b in series(), c in series()) {
        prop_assert_eq!(a.times(&b), b.times(&a));
        prop_assert_eq!(a.times(&b).times(&c), a.times(&b.times(&c)));
        prop_assert_eq!(a.times(&b.plus(&c)), a.times(&b).plus(&a.times(&c)));
        prop_assert_eq!(a.minus(&a), QSeries::constant(rat(0), a.order()));
    }

    #[test]
    fn qseries_inverse(a in series()) {
        match a.invert() {
            Ok(inv) => {
                let one = QSeries::constant(rat(1), a.order());
                prop_assert_eq!(a.times(&inv), one);
                prop_assert_eq!(inv.invert().unwrap(), a.clone());
            }
            Err(_) => prop_assert!(a.coefficient(0).is_zero()),
        }
    }
}
