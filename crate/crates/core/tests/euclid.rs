mod common;

use common::*;
use proptest::prelude::*;
use robba_core::{
    degree, divide, gcd_bezout, interval_degree, invert_unit, Degree, DivisionConfig, DivisionStatus, Error,
    HahnSeries, Interval, NormExponent, Rational, WittSeries,
};

fn lambda(x: &WittSeries, r: Rational) -> NormExponent {
    x.gauss_norm_exponent(r).exponent
}

fn deg(x: &WittSeries, r: Rational) -> Degree {
    degree(x, r).unwrap()
}

fn divisor(r: Rational) -> impl Strategy<Value = WittSeries> {
    witt_any().prop_filter("degree in [1, 4]", move |x| {
        matches!(deg(x, r), Degree::Finite(d) if (1..=4).contains(&d))
    })
}

/// `[u]·(1 + Σ ϖⁿ[xₙ])` with every perturbation strictly below `λ_t([u])` on
/// `[s, r]`, so the degree over the interval is 0.
fn unit_over(field: robba_core::BaseField, i: Interval) -> impl Strategy<Value = WittSeries> {
    let u = hahn(field, -3, 3, 1);
    let perturb = prop::collection::vec((-2i64..4, 1i64..6, hahn(field, 0, 3, 2)), 0..4);
    (u, perturb).prop_map(move |(u, ps)| {
        let mut x = WittSeries::one(field);
        for (n, shift, c) in ps {
            if n == 0 {
                continue;
            }
            // n + t·v > 0 on [s, r] needs v > -n/t at both ends
            let floor = if n > 0 { -Rational::from_integer(n) / i.r() } else { -Rational::from_integer(n) / i.s() };
            let v = c.valuation().unwrap().finite().unwrap();
            let lift = floor - v + Rational::new(shift, 4);
            x = x.add(&WittSeries::monomial(n, c.shift(lift).unwrap()));
        }
        WittSeries::teichmuller(u).mul(&x)
    })
}

/// Smaller factors for the gcd triples: up to three `ϖ`-terms in degrees
/// `0..4`, two-term coefficients.
fn factor(field: robba_core::BaseField) -> impl Strategy<Value = WittSeries> {
    prop::collection::vec((0i64..4, hahn(field, -1, 4, 2)), 1..=3)
        .prop_map(move |cs| WittSeries::from_coeffs(field, cs, None))
        .prop_filter("nonzero", |x| !x.is_zero())
}

fn intervals() -> impl Strategy<Value = Interval> {
    // endpoints are powers of 2, so `n / s` stays a valid exponent
    (0u32..5, 0u32..5).prop_map(|(a, b)| Interval::new(q(1 << a, 4), q(1 << (a + b).min(4), 4)).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn division_contract(
        (y, x, r) in radii().prop_flat_map(|r| (witt_any(), divisor(r), Just(r)))
            .prop_filter("same field", |(y, x, _)| y.field() == x.field())
    ) {
        let cfg = DivisionConfig::default();
        let d = divide(&y, &x, r, None, &cfg).unwrap();
        let back = y.sub(&d.quotient.mul(&x)).sub(&d.remainder);
        prop_assert!(lambda(&back, r) >= d.residual_exponent);
        prop_assert!(d.residual_exponent >= NormExponent::Finite(d.stop));
        prop_assert!(lambda(&d.remainder, r) >= lambda(&y, r));
        if d.status != DivisionStatus::PrecisionExhausted {
            prop_assert!(deg(&d.remainder, r) < deg(&x, r));
        }
    }

    #[test]
    fn gcd_of_common_multiples(
        (g, h, k) in fields().prop_flat_map(|f| (factor(f), factor(f), factor(f))),
        r in radii(),
    ) {
        let cfg = DivisionConfig::default();
        let (a, b) = (g.mul(&h), g.mul(&k));
        let res = gcd_bezout(&a, &b, r, None, &cfg).unwrap();
        prop_assert!(deg(&res.g, r) >= deg(&g, r));
        for v in [&a, &b] {
            let d = divide(v, &res.g, r, Some(res.stop), &cfg).unwrap();
            prop_assert_ne!(d.status, DivisionStatus::PrecisionExhausted);
            prop_assert!(d.remainder.is_zero());
        }
        let bez = res.a.mul(&a).add(&res.b.mul(&b)).sub(&res.g);
        prop_assert_eq!(lambda(&bez, r), res.residual_exponent);
        prop_assert!(res.residual_exponent >= NormExponent::Finite(res.stop));
    }

    #[test]
    fn degree_zero_elements_invert(
        (x, i) in (fields(), intervals()).prop_flat_map(|(f, i)| (unit_over(f, i), Just(i)))
    ) {
        prop_assert_eq!(interval_degree(&x, &i).unwrap(), Degree::Finite(0));
        let inv = invert_unit(&x, &i, q(10, 1), &DivisionConfig::default()).unwrap();
        let e = x.mul(&inv.value).sub(&WittSeries::one(x.field())).interval_norm_exponent(&i).exponent;
        prop_assert_eq!(e, inv.residual_exponent);
        prop_assert!(e >= q(10, 1));
    }

    #[test]
    fn positive_degree_is_not_a_unit(
        (x, i) in (witt_any(), intervals())
            .prop_filter("positive degree", |(x, i)| interval_degree(x, i).unwrap() > Degree::Finite(0))
    ) {
        prop_assert_eq!(invert_unit(&x, &i, q(10, 1), &DivisionConfig::default()), Err(Error::NotAUnit));
    }
}

#[test]
fn monic_linear_divides_its_multiples() {
    let f = f2();
    let z = WittSeries::pi_pow(f, 1).sub(&WittSeries::teichmuller(HahnSeries::t_pow(f, q(1, 1)).unwrap()));
    let y = z.mul(&WittSeries::pi_pow(f, 3).add(&WittSeries::one(f)));
    let d = divide(&y, &z, q(2, 1), None, &DivisionConfig::default()).unwrap();
    assert_eq!(d.status, DivisionStatus::Exact);
    assert!(d.remainder.is_zero());
    assert_eq!(d.quotient.mul(&z), y);
}
