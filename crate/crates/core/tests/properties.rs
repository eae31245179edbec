//! Algebraic invariants checked at random exact points.

use proptest::prelude::*;
use qhyper::askey_wilson::{eval_aw, AWParams, AwSequence, Rep};
use qhyper::products::PowerSeriesTrunc;
use qhyper::qkernel::{qpoch, vanishing_index, Param};
use qhyper::{ExactScalar, Scalar};

type X = ExactScalar;

fn gaussian() -> impl Strategy<Value = X> {
    (-9i64..=9, 1i64..=9, -9i64..=9, 1i64..=9).prop_map(|(a, b, c, d)| X::gauss(a, b, c, d))
}

fn nonzero() -> impl Strategy<Value = X> {
    gaussian().prop_filter("nonzero", |x| !x.is_zero())
}

/// `0 < |q| < 1`, away from roots of unity by construction.
fn base() -> impl Strategy<Value = X> {
    nonzero().prop_filter("inside the unit disk", |x| x.in_unit_disk())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn qpoch_splits(a in gaussian(), q in base(), m in 0usize..6, n in 0usize..6) {
        let lhs = qpoch(&a, &q, m + n);
        let rhs = qpoch(&a, &q, m) * &qpoch(&(a.clone() * &q.powi(m as i64)), &q, n);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn qpoch_even_length_in_base_q_squared(a in gaussian(), q in base(), n in 0usize..6) {
        let q2 = q.clone() * &q;
        let lhs = qpoch(&a, &q, 2 * n);
        let rhs = qpoch(&a, &q2, n) * &qpoch(&(a.clone() * &q), &q2, n);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn pair_shorthand_expands(a in gaussian(), w in nonzero(), q in base(), n in 0usize..6) {
        let neg = -a.clone();
        prop_assert_eq!(Param::PlusMinus(a.clone()).qpoch(&q, n), qpoch(&a, &q, n) * &qpoch(&neg, &q, n));
        let scaled = Param::ScaledPm { a: a.clone(), w: w.clone() }.qpoch(&q, n);
        prop_assert_eq!(scaled, qpoch(&(a.clone() * &w), &q, n) * &qpoch(&(a.clone() / &w), &q, n));
    }

    #[test]
    fn vanishing_index_finds_inverse_powers(q in base(), k in 0usize..8) {
        let a = q.powi(-(k as i64));
        prop_assert_eq!(vanishing_index(&a, &q), Some(k));
        prop_assert!(qpoch(&a, &q, k + 1).is_zero());
        prop_assert!(!qpoch(&a, &q, k).is_zero());
    }
}

fn aw(a: &X, b: &X, c: &X, d: &X, q: &X, w: &X, n: usize) -> Option<X> {
    eval_aw(&AWParams { a: a.clone(), b: b.clone(), c: c.clone(), d: d.clone(), q: q.clone(), w: w.clone(), n }, Rep::R3).ok()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn askey_wilson_is_symmetric(
        a in nonzero(), b in nonzero(), c in nonzero(), d in nonzero(), q in base(), w in nonzero(), n in 0usize..5
    ) {
        let Some(p) = aw(&a, &b, &c, &d, &q, &w, n) else { return Ok(()) };
        // Permutations of the four parameters, and w -> 1/w.
        for (x, y, z, t, v) in [(&b, &a, &c, &d, w.clone()), (&c, &b, &a, &d, w.clone()), (&d, &b, &c, &a, w.clone()), (&a, &b, &c, &d, w.inv())] {
            if let Some(p2) = aw(x, y, z, t, &q, &v, n) {
                prop_assert_eq!(&p, &p2);
            }
        }
    }

    #[test]
    fn three_term_recurrence_reproduces_the_polynomials(
        a in nonzero(), b in nonzero(), c in nonzero(), d in nonzero(), q in base(), w in nonzero()
    ) {
        let Ok(mut seq) = AwSequence::new(&a, &b, &c, &d, &q, &w) else { return Ok(()) };
        for n in 0..6 {
            let Ok(v) = seq.next_value() else { return Ok(()) };
            if let Some(p) = aw(&a, &b, &c, &d, &q, &w, n) {
                prop_assert_eq!(v, p, "n = {}", n);
            }
        }
    }
}

fn series() -> impl Strategy<Value = Vec<X>> {
    prop::collection::vec(gaussian(), 1..8)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn power_series_ring_laws(f in series(), g in series(), h in series()) {
        let one = X::from_i64(1);
        let (f, g, h) = (PowerSeriesTrunc::new(f, 6, &one), PowerSeriesTrunc::new(g, 6, &one), PowerSeriesTrunc::new(h, 6, &one));
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        prop_assert_eq!(&f * &g, &g * &f);
        prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
    }

    #[test]
    fn reciprocal_inverts(f in series(), c0 in nonzero()) {
        let one = X::from_i64(1);
        let mut f = PowerSeriesTrunc::new(f, 6, &one);
        f.coeffs[0] = c0;
        prop_assert_eq!(&f * &f.recip().unwrap(), PowerSeriesTrunc::one(6, &one));
    }

    #[test]
    fn substitution_is_multiplicative(f in series(), g in series(), s in nonzero(), m in 1usize..3) {
        let one = X::from_i64(1);
        let (f, g) = (PowerSeriesTrunc::new(f, 6, &one), PowerSeriesTrunc::new(g, 6, &one));
        prop_assert_eq!((&f * &g).substitute(&s, m), &f.substitute(&s, m) * &g.substitute(&s, m));
        prop_assert_eq!(f.shift(2).coeffs[2..].to_vec(), f.coeffs[..5].to_vec());
    }
}
