mod common;

use common::*;
use proptest::prelude::*;
use robba_core::newton::degree_from_polygon;
use robba_core::{degree, multiplicity, polygon, Degree, HahnSeries, NormExponent, Rational, WittSeries, Window};

fn lambda(x: &WittSeries, t: Rational) -> NormExponent {
    let v = x.gauss_norm_exponent(t);
    assert!(v.reliable);
    v.exponent
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn norm_matches_term_minimum(x in witt_any(), t in radii()) {
        prop_assert_eq!(lambda(&x, t), brute_norm(&x, t));
    }

    #[test]
    fn norm_is_multiplicative((x, y) in witt_pair(), t in radii()) {
        prop_assert_eq!(lambda(&x.mul(&y), t), lambda(&x, t) + lambda(&y, t));
    }

    #[test]
    fn norm_is_ultrametric((x, y) in witt_pair(), t in radii()) {
        let s = x.add(&y);
        prop_assert!(lambda(&s, t) >= lambda(&x, t).min(lambda(&y, t)));
    }

    #[test]
    fn multiplicities_add((x, y) in witt_pair(), t in radii()) {
        let xy = x.mul(&y);
        let m = |z: &WittSeries| multiplicity(z, t, Window::All).unwrap();
        prop_assert_eq!(m(&xy), m(&x) + m(&y));
        let d = |z: &WittSeries| degree(z, t).unwrap().finite().unwrap();
        prop_assert_eq!(d(&xy), d(&x) + d(&y));
    }

    #[test]
    fn degree_agrees_with_polygon(x in witt_any(), t in radii()) {
        prop_assert_eq!(degree(&x, t).unwrap(), degree_from_polygon(&x, t).unwrap());
    }

    #[test]
    fn polygon_slopes_are_tie_points(x in witt_any()) {
        for seg in polygon(&x, Window::All).unwrap().segments {
            let e = brute_norm(&x, seg.slope);
            let at = |(n, v): (i64, Rational)| Rational::from_integer(n) + seg.slope * v;
            prop_assert_eq!(e, NormExponent::Finite(at(seg.start)));
            prop_assert_eq!(e, NormExponent::Finite(at(seg.end)));
        }
    }

    #[test]
    fn hadamard_convexity(x in witt_any(), a in 1i64..16, b in 1i64..16, c in 0i64..=8) {
        let (t1, t2, c) = (q(a, 4), q(b, 4), q(c, 8));
        let mid = c * t1 + (Rational::from_integer(1) - c) * t2;
        let lhs = lambda(&x, mid).finite().unwrap();
        let rhs = c * lambda(&x, t1).finite().unwrap() + (Rational::from_integer(1) - c) * lambda(&x, t2).finite().unwrap();
        prop_assert!(lhs >= rhs);
    }

    #[test]
    fn hadamard_equality_on_monomials(n in 0i64..6, e in -4i64..8, a in 1i64..16, b in 1i64..16, c in 0i64..=8) {
        let x = WittSeries::monomial(n, HahnSeries::t_pow(f2(), q(e, 2)).unwrap());
        let (t1, t2, c) = (q(a, 4), q(b, 4), q(c, 8));
        let mid = c * t1 + (Rational::from_integer(1) - c) * t2;
        let lhs = lambda(&x, mid).finite().unwrap();
        let rhs = c * lambda(&x, t1).finite().unwrap() + (Rational::from_integer(1) - c) * lambda(&x, t2).finite().unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn zero_has_degree_minus_infinity() {
    assert_eq!(degree(&WittSeries::zero(f2()), q(1, 1)).unwrap(), Degree::NegInfinity);
}
