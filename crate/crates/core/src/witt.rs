//! Series `Σ ϖⁿ[x̄ₙ]` with coefficients in `L`.
//!
//! In characteristic `p` the Teichmüller map is additive, so the ring
//! operations are those of Laurent series in `ϖ` over `L`. Uncertainty comes
//! from two places: coefficients known only modulo `t^M`, and an unknown
//! tail `O(ϖ^N [t^V])` covering every degree `n ≥ N` with coefficient
//! valuation at least `V`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exponent::{NormExponent, Rational};
use crate::hahn::{fmt_t_power, BaseField, HahnSeries};

/// The unknown part `O(ϖ^start · [t^min_val])`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PiTail {
    pub start: i64,
    pub min_val: Rational,
}

impl PiTail {
    pub fn new(start: i64) -> PiTail {
        PiTail { start, min_val: Rational::zero() }
    }
}

/// A closed interval `[s, r]` of radii, `0 < s ≤ r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Interval {
    s: Rational,
    r: Rational,
}

impl Interval {
    pub fn new(s: Rational, r: Rational) -> Result<Interval> {
        if !s.is_positive() {
            return Err(Error::BadInterval("left endpoint must be positive"));
        }
        if s > r {
            return Err(Error::BadInterval("left endpoint exceeds right endpoint"));
        }
        Ok(Interval { s, r })
    }

    pub fn point(r: Rational) -> Result<Interval> {
        Interval::new(r, r)
    }

    pub fn s(&self) -> Rational {
        self.s
    }

    pub fn r(&self) -> Rational {
        self.r
    }

    pub fn contains(&self, t: Rational) -> bool {
        self.s <= t && t <= self.r
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.s <= other.s && other.r <= self.r
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        Interval::new(self.s.max(other.s), self.r.min(other.r)).ok()
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.s, self.r)
    }
}

/// A norm exponent together with a reliability flag.
///
/// When `reliable` is false, `exponent` is only a lower bound: some term
/// hidden by precision could have smaller exponent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct NormValue {
    pub exponent: NormExponent,
    pub reliable: bool,
}

impl NormValue {
    /// The exponent, or `PrecisionExhausted` when it is not reliable.
    pub fn require(self) -> Result<NormExponent> {
        if self.reliable {
            Ok(self.exponent)
        } else {
            Err(Error::PrecisionExhausted("norm not determined at this precision"))
        }
    }
}

/// Line `a + t·b` in the `(t, exponent)` plane.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Line {
    pub a: Rational,
    pub b: Rational,
}

impl Line {
    pub fn at(&self, t: Rational) -> Rational {
        self.a + t * self.b
    }
}

/// Evaluation point for reliability checks. `ZeroPlus` is the limit `t → 0⁺`,
/// `Infinity` the limit `t → ∞`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum End {
    ZeroPlus,
    At(Rational),
    Infinity,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct WittSeries {
    field: BaseField,
    coeffs: BTreeMap<i64, HahnSeries>,
    tail: Option<PiTail>,
}

impl WittSeries {
    pub fn zero(field: BaseField) -> WittSeries {
        WittSeries { field, coeffs: BTreeMap::new(), tail: None }
    }

    pub fn one(field: BaseField) -> WittSeries {
        WittSeries::teichmuller(HahnSeries::one(field))
    }

    /// `ϖⁿ`.
    pub fn pi_pow(field: BaseField, n: i64) -> WittSeries {
        WittSeries::monomial(n, HahnSeries::one(field))
    }

    /// `[x̄]`.
    pub fn teichmuller(x: HahnSeries) -> WittSeries {
        WittSeries::monomial(0, x)
    }

    /// `ϖⁿ[x̄]`.
    pub fn monomial(n: i64, x: HahnSeries) -> WittSeries {
        let field = x.field();
        let mut coeffs = BTreeMap::new();
        if !x.is_zero() {
            coeffs.insert(n, x);
        }
        WittSeries { field, coeffs, tail: None }
    }

    /// Builds a series from `(n, x̄ₙ)` pairs; repeated degrees are summed and
    /// degrees at or beyond the tail are absorbed into it.
    pub fn from_coeffs<I>(field: BaseField, coeffs: I, tail: Option<PiTail>) -> WittSeries
    where
        I: IntoIterator<Item = (i64, HahnSeries)>,
    {
        let mut map: BTreeMap<i64, HahnSeries> = BTreeMap::new();
        for (n, x) in coeffs {
            add_into(&mut map, n, &x);
        }
        WittSeries::normalize(field, map, tail)
    }

    fn normalize(field: BaseField, mut map: BTreeMap<i64, HahnSeries>, tail: Option<PiTail>) -> WittSeries {
        let tail = tail.map(|mut tl| {
            for (_, x) in map.split_off(&tl.start) {
                if let NormExponent::Finite(v) = x.valuation_lower_bound() {
                    tl.min_val = tl.min_val.min(v);
                }
            }
            tl
        });
        map.retain(|_, x| !x.is_zero());
        WittSeries { field, coeffs: map, tail }
    }

    pub fn field(&self) -> BaseField {
        self.field
    }

    pub fn coeffs(&self) -> &BTreeMap<i64, HahnSeries> {
        &self.coeffs
    }

    pub fn coeff(&self, n: i64) -> Option<&HahnSeries> {
        self.coeffs.get(&n)
    }

    pub fn tail(&self) -> Option<PiTail> {
        self.tail
    }

    /// `N` such that all coefficients below `ϖ^N` are stored, `None` if the
    /// series is a Laurent polynomial in `ϖ`.
    pub fn prec_pi(&self) -> Option<i64> {
        self.tail.map(|t| t.start)
    }

    /// Exactly known zero.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty() && self.tail.is_none()
    }

    pub fn is_one(&self) -> bool {
        self.tail.is_none() && self.coeffs.len() == 1 && self.coeffs.get(&0).is_some_and(|x| x.is_one())
    }

    /// No tail and every coefficient exact.
    pub fn is_exact(&self) -> bool {
        self.tail.is_none() && self.coeffs.values().all(HahnSeries::is_exact)
    }

    /// Least degree with a known nonzero coefficient.
    pub fn n_min(&self) -> Option<i64> {
        self.coeffs.iter().find(|(_, x)| x.has_terms()).map(|(n, _)| *n)
    }

    /// Largest degree with a known nonzero coefficient.
    pub fn n_max(&self) -> Option<i64> {
        self.coeffs.iter().rev().find(|(_, x)| x.has_terms()).map(|(n, _)| *n)
    }

    /// Membership in the integral subring: no negative `ϖ`-powers.
    pub fn check_integral(&self) -> Result<()> {
        match self.coeffs.keys().next() {
            Some(&n) if n < 0 => Err(Error::NotIntegral),
            _ => match self.tail {
                Some(t) if t.start < 0 => Err(Error::NotIntegral),
                _ => Ok(()),
            },
        }
    }

    /// Drops the tail and all coefficient precision caps, giving an exact
    /// Laurent polynomial that agrees with `self` on every known term.
    pub fn exact_part(&self) -> WittSeries {
        let coeffs = self
            .coeffs
            .iter()
            .filter(|(_, x)| x.has_terms())
            .map(|(n, x)| (*n, x.exact_part()))
            .collect();
        WittSeries { field: self.field, coeffs, tail: None }
    }

    /// Forgets every coefficient of degree `≥ n`, replacing it by a tail.
    pub fn truncate_pi(&self, n: i64) -> WittSeries {
        let tail = match self.tail {
            Some(t) if t.start <= n => t,
            Some(t) => PiTail { start: n, min_val: t.min_val },
            None => PiTail::new(n),
        };
        WittSeries::normalize(self.field, self.coeffs.clone(), Some(tail))
    }

    /// Removes the terms `ϖⁿ[c·t^e]` with `f(n, e) ≥ bound`, without
    /// recording the loss. Returns the kept part and the least `f` among the
    /// dropped terms.
    pub(crate) fn chop_by<F>(&self, bound: Rational, f: F) -> (WittSeries, NormExponent)
    where
        F: Fn(i64, Rational) -> Rational,
    {
        let mut dropped = NormExponent::Infinity;
        let mut coeffs = BTreeMap::new();
        for (&n, x) in &self.coeffs {
            let kept = x.retain_terms(|e| {
                let v = f(n, e);
                if v >= bound {
                    dropped = dropped.min(NormExponent::Finite(v));
                    false
                } else {
                    true
                }
            });
            if !kept.is_zero() {
                coeffs.insert(n, kept);
            }
        }
        (WittSeries { field: self.field, coeffs, tail: self.tail }, dropped)
    }

    /// [`chop_by`](Self::chop_by) for the `λ_r`-exponent of each term.
    pub(crate) fn chop_lambda(&self, r: Rational, bound: Rational) -> (WittSeries, NormExponent) {
        self.chop_by(bound, |n, e| Rational::from_integer(n) + r * e)
    }

    /// [`chop_by`](Self::chop_by) for the `λ_I`-exponent of each term.
    pub(crate) fn chop_interval(&self, interval: &Interval, bound: Rational) -> (WittSeries, NormExponent) {
        let (s, r) = (interval.s(), interval.r());
        self.chop_by(bound, |n, e| {
            let n = Rational::from_integer(n);
            (n + s * e).min(n + r * e)
        })
    }

    /// Least exponent at `t` that precision could hide, `∞` if exact.
    pub(crate) fn hidden_exponent(&self, t: Rational) -> NormExponent {
        self.hidden_lines().iter().map(|l| NormExponent::Finite(l.at(t))).min().unwrap_or(NormExponent::Infinity)
    }

    pub fn neg(&self) -> WittSeries {
        let coeffs = self.coeffs.iter().map(|(n, x)| (*n, x.neg())).collect();
        WittSeries { field: self.field, coeffs, tail: self.tail }
    }

    pub fn add(&self, other: &WittSeries) -> WittSeries {
        assert_eq!(self.field, other.field, "series over different fields");
        let mut map = self.coeffs.clone();
        for (n, x) in &other.coeffs {
            add_into(&mut map, *n, x);
        }
        let tail = match (self.tail, other.tail) {
            (None, t) | (t, None) => t,
            (Some(a), Some(b)) => Some(PiTail { start: a.start.min(b.start), min_val: a.min_val.min(b.min_val) }),
        };
        WittSeries::normalize(self.field, map, tail)
    }

    pub fn sub(&self, other: &WittSeries) -> WittSeries {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &WittSeries) -> WittSeries {
        assert_eq!(self.field, other.field, "series over different fields");
        if self.is_zero() || other.is_zero() {
            return WittSeries::zero(self.field);
        }
        let tail = [(self.tail, other), (other.tail, self)]
            .into_iter()
            .filter_map(|(t, y)| {
                t.map(|t| PiTail { start: t.start + y.lowest_degree(), min_val: t.min_val + y.valuation_floor() })
            })
            .reduce(|a, b| PiTail { start: a.start.min(b.start), min_val: a.min_val.min(b.min_val) });
        let limit = tail.map_or(i64::MAX, |t| t.start);
        let mut map: BTreeMap<i64, HahnSeries> = BTreeMap::new();
        for (i, x) in &self.coeffs {
            for (j, y) in &other.coeffs {
                if i + j >= limit {
                    break;
                }
                add_into(&mut map, i + j, &x.mul(y));
            }
        }
        WittSeries::normalize(self.field, map, tail)
    }

    /// Product of the exact parts keeping only terms of `λ_r`-exponent below
    /// `bound`, with the least exponent of any discarded term product.
    pub(crate) fn mul_lambda(&self, other: &WittSeries, r: Rational, bound: Rational) -> (WittSeries, NormExponent) {
        self.mul_below(other, r, r, bound)
    }

    /// [`mul_lambda`](Self::mul_lambda) for the `λ_I`-exponent.
    pub(crate) fn mul_interval(&self, other: &WittSeries, interval: &Interval, bound: Rational) -> (WittSeries, NormExponent) {
        self.mul_below(other, interval.s(), interval.r(), bound)
    }

    fn mul_below(&self, other: &WittSeries, s: Rational, r: Rational, bound: Rational) -> (WittSeries, NormExponent) {
        assert_eq!(self.field, other.field, "series over different fields");
        let mut dropped = NormExponent::Infinity;
        let mut map: BTreeMap<i64, HahnSeries> = BTreeMap::new();
        for (i, x) in &self.coeffs {
            for (j, y) in &other.coeffs {
                let n = Rational::from_integer(i + j);
                // `min(n + s·e, n + r·e) < bound` exactly when `e` is below both
                let (h, d) = x.mul_below(y, ((bound - n) / s).max((bound - n) / r));
                if let NormExponent::Finite(d) = d {
                    dropped = dropped.min(NormExponent::Finite((n + s * d).min(n + r * d)));
                }
                if !h.is_zero() {
                    add_into(&mut map, i + j, &h);
                }
            }
        }
        (WittSeries::normalize(self.field, map, None), dropped)
    }

    /// `x^{p^k}` of the exact part; additive in characteristic `p`.
    pub(crate) fn pow_p(&self, k: u32) -> Result<WittSeries> {
        let q = (0..k).fold(1i64, |a, _| a * i64::from(self.field.p()));
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for (n, x) in &self.coeffs {
            coeffs.push((n * q, x.exact_part().frobenius(i64::from(k))?));
        }
        Ok(WittSeries::from_coeffs(self.field, coeffs, None))
    }

    pub fn pow(&self, n: u32) -> WittSeries {
        let mut acc = WittSeries::one(self.field);
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiplication by `ϖ^k`.
    pub fn shift_pi(&self, k: i64) -> WittSeries {
        let coeffs = self.coeffs.iter().map(|(n, x)| (n + k, x.clone())).collect();
        let tail = self.tail.map(|t| PiTail { start: t.start + k, min_val: t.min_val });
        WittSeries { field: self.field, coeffs, tail }
    }

    /// Multiplication by `[c]`.
    pub fn scale(&self, c: &HahnSeries) -> WittSeries {
        self.mul(&WittSeries::teichmuller(c.clone()))
    }

    fn lowest_degree(&self) -> i64 {
        let n = self.coeffs.keys().next().copied();
        let t = self.tail.map(|t| t.start);
        n.into_iter().chain(t).min().unwrap_or(0)
    }

    fn valuation_floor(&self) -> Rational {
        let mut v = self.tail.map(|t| t.min_val);
        for x in self.coeffs.values() {
            if let NormExponent::Finite(e) = x.valuation_lower_bound() {
                v = Some(v.map_or(e, |w| w.min(e)));
            }
        }
        v.unwrap_or_else(Rational::zero)
    }

    /// Known points `(n, v(x̄ₙ))`, ascending in `n`.
    pub fn points(&self) -> Vec<(i64, Rational)> {
        self.coeffs
            .iter()
            .filter_map(|(n, x)| x.leading_term().map(|(e, _)| (*n, e)))
            .collect()
    }

    pub(crate) fn known_lines(&self) -> Vec<Line> {
        self.points().into_iter().map(|(n, v)| Line { a: Rational::from_integer(n), b: v }).collect()
    }

    /// Lines bounding what precision could hide.
    pub(crate) fn hidden_lines(&self) -> Vec<Line> {
        let mut out: Vec<Line> = self
            .coeffs
            .iter()
            .filter_map(|(n, x)| x.prec().finite().map(|m| Line { a: Rational::from_integer(*n), b: m }))
            .collect();
        if let Some(t) = self.tail {
            out.push(Line { a: Rational::from_integer(t.start), b: t.min_val });
        }
        out
    }

    fn known_min(&self, t: Rational) -> NormExponent {
        self.known_lines().iter().map(|l| NormExponent::Finite(l.at(t))).min().unwrap_or(NormExponent::Infinity)
    }

    /// `λ_t` as an exponent: `min_n (n + t·v(x̄ₙ))`. `t = 0` gives the
    /// `ϖ`-adic valuation.
    pub fn gauss_norm_exponent(&self, t: Rational) -> NormValue {
        assert!(!t.is_negative(), "Gauss norm parameter must be nonnegative");
        let e = self.known_min(t);
        let h = self.hidden_exponent(t);
        if e <= h {
            NormValue { exponent: e, reliable: true }
        } else {
            NormValue { exponent: h, reliable: false }
        }
    }

    /// `λ_I = max(λ_s, λ_r)`.
    pub fn interval_norm_exponent(&self, interval: &Interval) -> NormValue {
        let a = self.gauss_norm_exponent(interval.s);
        let b = self.gauss_norm_exponent(interval.r);
        NormValue { exponent: a.exponent.min(b.exponent), reliable: a.reliable && b.reliable }
    }

    /// Views an element of `B^I` as an element of `B^J`, `J ⊆ I`.
    pub fn restrict_interval(&self, from: &Interval, to: &Interval) -> Result<WittSeries> {
        if !from.contains_interval(to) {
            return Err(Error::BadInterval("target interval is not contained in the source"));
        }
        Ok(self.clone())
    }

    /// Whether every hidden line stays above (or, with `strict`, strictly
    /// above) the known minimum on the window between `lo` and `hi`.
    ///
    /// The known minimum is concave and each hidden line affine, so the
    /// comparison only needs the two ends.
    pub(crate) fn dominates_hidden(&self, lo: End, hi: End, strict: bool) -> bool {
        let hidden = self.hidden_lines();
        if hidden.is_empty() {
            return true;
        }
        let known = self.known_lines();
        if known.is_empty() {
            return false;
        }
        hidden.iter().all(|h| {
            [lo, hi].iter().all(|end| {
                let (ke, he) = match *end {
                    End::At(t) => {
                        let k = known.iter().map(|l| l.at(t)).min().unwrap();
                        ((k, Rational::zero()), (h.at(t), Rational::zero()))
                    }
                    End::ZeroPlus => {
                        let k = known.iter().map(|l| (l.a, l.b)).min().unwrap();
                        (k, (h.a, h.b))
                    }
                    End::Infinity => {
                        let k = known.iter().map(|l| (l.b, l.a)).min().unwrap();
                        (k, (h.b, h.a))
                    }
                };
                if strict {
                    ke < he
                } else {
                    ke <= he
                }
            })
        })
    }

    /// Degrees `n` attaining `λ_t`, ascending. Requires strict dominance of
    /// the known terms over the hidden ones.
    pub(crate) fn minimizers(&self, t: Rational) -> Result<Vec<i64>> {
        if !self.dominates_hidden(End::At(t), End::At(t), true) {
            return Err(Error::PrecisionExhausted("minimizing degrees not determined at this precision"));
        }
        let pts = self.points();
        let Some(e) = pts.iter().map(|&(n, v)| Rational::from_integer(n) + t * v).min() else {
            return Ok(Vec::new());
        };
        Ok(pts.iter().filter(|&&(n, v)| Rational::from_integer(n) + t * v == e).map(|&(n, _)| n).collect())
    }
}

fn add_into(map: &mut BTreeMap<i64, HahnSeries>, n: i64, x: &HahnSeries) {
    match map.get_mut(&n) {
        Some(slot) => *slot = slot.add(x),
        None => {
            map.insert(n, x.clone());
        }
    }
}

impl Add for &WittSeries {
    type Output = WittSeries;
    fn add(self, rhs: &WittSeries) -> WittSeries {
        WittSeries::add(self, rhs)
    }
}

impl Sub for &WittSeries {
    type Output = WittSeries;
    fn sub(self, rhs: &WittSeries) -> WittSeries {
        WittSeries::sub(self, rhs)
    }
}

impl Mul for &WittSeries {
    type Output = WittSeries;
    fn mul(self, rhs: &WittSeries) -> WittSeries {
        WittSeries::mul(self, rhs)
    }
}

impl Neg for &WittSeries {
    type Output = WittSeries;
    fn neg(self) -> WittSeries {
        WittSeries::neg(self)
    }
}

fn fmt_pi_power(f: &mut fmt::Formatter<'_>, n: i64) -> fmt::Result {
    match n {
        1 => f.write_str("pi"),
        n if n >= 0 => write!(f, "pi^{n}"),
        n => write!(f, "pi^({n})"),
    }
}

impl fmt::Display for WittSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (&n, x) in self.coeffs.iter().rev() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match (n, x.is_one()) {
                (0, true) => f.write_str("1")?,
                (_, true) => fmt_pi_power(f, n)?,
                (0, false) => write!(f, "[{x}]")?,
                _ => {
                    fmt_pi_power(f, n)?;
                    write!(f, "*[{x}]")?;
                }
            }
        }
        if let Some(t) = self.tail {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            f.write_str("O(")?;
            fmt_pi_power(f, t.start)?;
            if !t.min_val.is_zero() {
                f.write_str("*[")?;
                fmt_t_power(f, "t", t.min_val)?;
                f.write_str("]")?;
            }
            f.write_str(")")?;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for WittSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WittSeries({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn k2() -> BaseField {
        BaseField::prime(2).unwrap()
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn tp(e: Rational) -> HahnSeries {
        HahnSeries::t_pow(k2(), e).unwrap()
    }

    fn pi() -> WittSeries {
        WittSeries::pi_pow(k2(), 1)
    }

    fn teich(e: i64) -> WittSeries {
        WittSeries::teichmuller(tp(q(e, 1)))
    }

    #[test]
    fn ring_operations() {
        let k = k2();
        let a = teich(1).add(&teich(2));
        assert_eq!(a, WittSeries::teichmuller(tp(q(1, 1)).add(&tp(q(2, 1)))));
        assert_eq!(a.add(&WittSeries::zero(k)), a);
        let x = pi().sub(&teich(1));
        let y = pi().add(&teich(1));
        assert!(x.add(&y).is_zero());
        assert_eq!(x.mul(&y), WittSeries::pi_pow(k, 2).add(&teich(2)));
        assert_eq!(pi().mul(&teich(1)), WittSeries::monomial(1, tp(q(1, 1))));
    }

    #[test]
    fn gauss_norms() {
        for t in [q(1, 3), q(1, 1), q(5, 2)] {
            assert_eq!(pi().gauss_norm_exponent(t).exponent, NormExponent::int(1));
        }
        assert_eq!(teich(1).gauss_norm_exponent(q(1, 1)).exponent, NormExponent::int(1));
        assert_eq!(teich(1).gauss_norm_exponent(q(2, 1)).exponent, NormExponent::int(2));
        let x = WittSeries::monomial(2, tp(q(1, 2)));
        assert_eq!(x.gauss_norm_exponent(q(1, 1)).exponent, NormExponent::Finite(q(5, 2)));
        assert_eq!(WittSeries::zero(k2()).gauss_norm_exponent(q(1, 1)).exponent, NormExponent::Infinity);
    }

    #[test]
    fn interval_norms() {
        let x = pi().sub(&teich(1));
        let i = Interval::new(q(1, 2), q(2, 1)).unwrap();
        assert_eq!(x.interval_norm_exponent(&i).exponent, NormExponent::Finite(q(1, 2)));
        let r = Interval::point(q(3, 1)).unwrap();
        assert_eq!(x.interval_norm_exponent(&r), x.gauss_norm_exponent(q(3, 1)));
        assert!(Interval::new(q(2, 1), q(1, 1)).is_err());
        assert!(Interval::new(q(0, 1), q(1, 1)).is_err());
    }

    #[test]
    fn restriction() {
        let x = pi().sub(&teich(1));
        let big = Interval::new(q(1, 2), q(2, 1)).unwrap();
        let small = Interval::point(q(1, 1)).unwrap();
        assert_eq!(x.restrict_interval(&big, &small).unwrap(), x);
        assert_eq!(x.restrict_interval(&small, &big), Err(Error::BadInterval("target interval is not contained in the source")));
    }

    #[test]
    fn tail_reliability() {
        // [t] + O(pi^3): λ_t = t as long as t ≤ 3
        let x = teich(1).truncate_pi(3).add(&WittSeries::from_coeffs(k2(), [], Some(PiTail::new(3))));
        assert!(x.gauss_norm_exponent(q(3, 1)).reliable);
        assert!(!x.gauss_norm_exponent(q(4, 1)).reliable);
        assert_eq!(x.gauss_norm_exponent(q(4, 1)).exponent, NormExponent::int(3));
        assert!(x.minimizers(q(3, 1)).is_err());
        assert_eq!(x.minimizers(q(2, 1)).unwrap(), [0]);
    }

    #[test]
    fn product_propagates_tail() {
        let x = pi().add(&WittSeries::from_coeffs(k2(), [], Some(PiTail::new(4))));
        let y = x.mul(&x);
        assert_eq!(y.prec_pi(), Some(5));
        assert_eq!(y.coeffs().keys().copied().collect::<Vec<_>>(), [2]);
    }

    #[test]
    fn coefficient_precision_is_hidden_line() {
        let h = HahnSeries::big_o(k2(), q(2, 1)).unwrap();
        let x = WittSeries::from_coeffs(k2(), [(0, h), (1, HahnSeries::one(k2()))], None);
        // known: 1; hidden: 0 + 2t
        assert!(x.gauss_norm_exponent(q(1, 2)).reliable);
        assert!(!x.gauss_norm_exponent(q(1, 3)).reliable);
    }

    #[test]
    fn display_format() {
        let x = WittSeries::pi_pow(k2(), 2)
            .add(&pi().mul(&teich(1).add(&teich(2))))
            .add(&teich(3));
        assert_eq!(x.to_string(), "pi^2 + pi*[t + t^2] + [t^3]");
        assert_eq!(WittSeries::zero(k2()).to_string(), "0");
        assert_eq!(WittSeries::one(k2()).shift_pi(-1).to_string(), "pi^(-1)");
        let y = teich(1).truncate_pi(2);
        assert_eq!(y.to_string(), "[t] + O(pi^2)");
    }
}
