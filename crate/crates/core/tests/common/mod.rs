#![allow(dead_code)]

use proptest::prelude::*;
use robba_core::fq::Fq;
use robba_core::{BaseField, FqElement, HahnSeries, NormExponent, Rational, WittSeries};

pub fn f2() -> BaseField {
    BaseField::prime(2).unwrap()
}

pub fn f4() -> BaseField {
    BaseField::new(Fq::new(2, 2).unwrap(), 8)
}

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

pub fn fields() -> impl Strategy<Value = BaseField> {
    prop_oneof![Just(f2()), Just(f4())]
}

fn coeff(field: BaseField, code: u32) -> FqElement {
    let fq = field.fq();
    fq.from_code(1 + code % (fq.order() - 1)).unwrap()
}

/// `whole + frac / p^j` with `j ≤ 3`.
fn exponent(field: BaseField, whole: i64, frac: u32, j: u32) -> Rational {
    let den = i64::from(field.p()).pow(j);
    Rational::from_integer(whole) + Rational::new(i64::from(frac) % den, den)
}

/// Nonzero exact Hahn series with up to `max_terms` terms and exponents in
/// roughly `[lo, hi)`.
pub fn hahn(field: BaseField, lo: i64, hi: i64, max_terms: usize) -> impl Strategy<Value = HahnSeries> {
    prop::collection::vec((lo..hi, any::<u32>(), 0u32..=3, any::<u32>()), 1..=max_terms)
        .prop_map(move |ts| {
            let terms = ts.into_iter().map(|(w, fr, j, c)| (exponent(field, w, fr, j), coeff(field, c)));
            HahnSeries::from_terms(field, terms, NormExponent::Infinity).unwrap()
        })
        .prop_filter("nonzero", |x| !x.is_zero())
}

/// Nonzero exact series with up to six `ϖ`-terms in degrees `0..6`.
pub fn witt(field: BaseField) -> impl Strategy<Value = WittSeries> {
    prop::collection::vec((0i64..6, hahn(field, -2, 6, 3)), 1..=6)
        .prop_map(move |cs| WittSeries::from_coeffs(field, cs, None))
        .prop_filter("nonzero", |x| !x.is_zero())
}

pub fn witt_pair() -> impl Strategy<Value = (WittSeries, WittSeries)> {
    fields().prop_flat_map(|f| (witt(f), witt(f)))
}

pub fn witt_any() -> impl Strategy<Value = WittSeries> {
    fields().prop_flat_map(witt)
}

/// `min_n min_{terms} n + t·e`, read straight off the terms.
pub fn brute_norm(x: &WittSeries, t: Rational) -> NormExponent {
    let mut best = NormExponent::Infinity;
    for (n, c) in x.coeffs() {
        for (e, _) in c.terms() {
            best = best.min(NormExponent::Finite(Rational::from_integer(*n) + t * e));
        }
    }
    best
}

pub fn radii() -> impl Strategy<Value = Rational> {
    prop_oneof![Just(q(1, 3)), Just(q(1, 2)), Just(q(1, 1)), Just(q(2, 1))]
}
