//! The coefficient field `L`: Hahn series `Σ c_e t^e` over `F_q` with
//! finitely many exponents in `Z[1/p]`, known modulo `t^M`.
//!
//! The valuation is normalized by `v(t) = 1`, so `|x| = p^{-v(x)}`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exponent::{p_power_of, NormExponent, Rational};
use crate::fq::{Fq, FqElement};

/// Default cap `K`: exponent denominators may not exceed `p^K`.
pub const DEFAULT_DEN_POW: u32 = 8;

/// `F_q` together with the exponent-denominator cap.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BaseField {
    fq: Fq,
    max_den_pow: u32,
}

impl BaseField {
    pub fn new(fq: Fq, max_den_pow: u32) -> BaseField {
        BaseField { fq, max_den_pow }
    }

    /// `F_p` with the default denominator cap.
    pub fn prime(p: u32) -> Result<BaseField> {
        Ok(BaseField::new(Fq::prime(p)?, DEFAULT_DEN_POW))
    }

    pub fn fq(&self) -> &Fq {
        &self.fq
    }

    pub fn p(&self) -> u32 {
        self.fq.p()
    }

    pub fn max_den_pow(&self) -> u32 {
        self.max_den_pow
    }

    /// Checks that `e` has denominator `p^k` with `k ≤ K`.
    pub fn check_exponent(&self, e: Rational) -> Result<()> {
        match p_power_of(*e.denom(), self.p()) {
            None => Err(Error::BadExponent(e)),
            Some(k) if k > self.max_den_pow => Err(Error::CapExceeded(self.max_den_pow)),
            Some(_) => Ok(()),
        }
    }
}

/// A truncated Hahn series. Terms are sorted by exponent, nonzero, and lie
/// strictly below the precision cap.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct HahnSeries {
    field: BaseField,
    terms: Vec<(Rational, FqElement)>,
    prec: NormExponent,
}

impl HahnSeries {
    pub fn zero(field: BaseField) -> HahnSeries {
        HahnSeries { field, terms: Vec::new(), prec: NormExponent::Infinity }
    }

    pub fn one(field: BaseField) -> HahnSeries {
        HahnSeries::constant(field, field.fq.one())
    }

    pub fn constant(field: BaseField, c: FqElement) -> HahnSeries {
        let terms = if c.is_zero() { Vec::new() } else { alloc::vec![(Rational::zero(), c)] };
        HahnSeries { field, terms, prec: NormExponent::Infinity }
    }

    /// `O(t^M)`: an unknown element of valuation at least `M`.
    pub fn big_o(field: BaseField, prec: Rational) -> Result<HahnSeries> {
        field.check_exponent(prec)?;
        Ok(HahnSeries { field, terms: Vec::new(), prec: NormExponent::Finite(prec) })
    }

    /// `c·t^e`.
    pub fn monomial(field: BaseField, c: FqElement, e: Rational) -> Result<HahnSeries> {
        field.check_exponent(e)?;
        let terms = if c.is_zero() { Vec::new() } else { alloc::vec![(e, c)] };
        Ok(HahnSeries { field, terms, prec: NormExponent::Infinity })
    }

    /// `t^e`.
    pub fn t_pow(field: BaseField, e: Rational) -> Result<HahnSeries> {
        HahnSeries::monomial(field, field.fq.one(), e)
    }

    /// Builds a series from arbitrary terms: repeated exponents are summed,
    /// zero coefficients and terms at or above `prec` are dropped.
    pub fn from_terms<I>(field: BaseField, terms: I, prec: NormExponent) -> Result<HahnSeries>
    where
        I: IntoIterator<Item = (Rational, FqElement)>,
    {
        if let NormExponent::Finite(m) = prec {
            field.check_exponent(m)?;
        }
        let mut acc: BTreeMap<Rational, FqElement> = BTreeMap::new();
        for (e, c) in terms {
            field.check_exponent(e)?;
            accumulate(&field.fq, &mut acc, e, c);
        }
        Ok(HahnSeries::from_map(field, acc, prec))
    }

    fn from_map(field: BaseField, acc: BTreeMap<Rational, FqElement>, prec: NormExponent) -> HahnSeries {
        let terms = acc
            .into_iter()
            .filter(|(e, c)| !c.is_zero() && NormExponent::Finite(*e) < prec)
            .collect();
        HahnSeries { field, terms, prec }
    }

    pub fn field(&self) -> BaseField {
        self.field
    }

    pub fn terms(&self) -> &[(Rational, FqElement)] {
        &self.terms
    }

    pub fn prec(&self) -> NormExponent {
        self.prec
    }

    pub fn is_exact(&self) -> bool {
        self.prec.is_infinite()
    }

    /// True only for the exactly known zero.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty() && self.is_exact()
    }

    pub fn has_terms(&self) -> bool {
        !self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.is_exact() && self.terms.len() == 1 && self.terms[0].0.is_zero() && self.terms[0].1 == self.field.fq.one()
    }

    /// An exact single term `c·t^e`.
    pub fn is_monomial(&self) -> bool {
        self.is_exact() && self.terms.len() == 1
    }

    pub fn leading_term(&self) -> Option<(Rational, FqElement)> {
        self.terms.first().copied()
    }

    /// The valuation `v(x)`, `+∞` for exact zero.
    ///
    /// Fails with [`Error::ZeroWithinPrecision`] when no term is known but
    /// the precision is finite: then only `v(x) ≥ prec` is known.
    pub fn valuation(&self) -> Result<NormExponent> {
        match (self.terms.first(), self.prec) {
            (Some((e, _)), _) => Ok(NormExponent::Finite(*e)),
            (None, NormExponent::Infinity) => Ok(NormExponent::Infinity),
            (None, NormExponent::Finite(m)) => Err(Error::ZeroWithinPrecision(m)),
        }
    }

    /// Least known exponent, or the precision cap when no term is known.
    pub fn valuation_lower_bound(&self) -> NormExponent {
        match self.terms.first() {
            Some((e, _)) => NormExponent::Finite(*e),
            None => self.prec,
        }
    }

    /// Forgets the precision cap, keeping the known terms as an exact element.
    pub fn exact_part(&self) -> HahnSeries {
        HahnSeries { field: self.field, terms: self.terms.clone(), prec: NormExponent::Infinity }
    }

    /// Lowers the precision cap to `bound`, dropping terms at or above it.
    pub fn truncate(&self, bound: NormExponent) -> HahnSeries {
        let prec = self.prec.min(bound);
        let terms = self.terms.iter().copied().filter(|(e, _)| NormExponent::Finite(*e) < prec).collect();
        HahnSeries { field: self.field, terms, prec }
    }

    /// Drops terms at or above `bound` without recording a precision loss.
    /// Callers account for the discarded part themselves.
    pub fn chop(&self, bound: Rational) -> HahnSeries {
        let terms = self.terms.iter().copied().filter(|(e, _)| *e < bound).collect();
        HahnSeries { field: self.field, terms, prec: self.prec }
    }

    /// Keeps the terms whose exponent satisfies `keep`; the precision cap is
    /// left unchanged.
    pub(crate) fn retain_terms<F: FnMut(Rational) -> bool>(&self, mut keep: F) -> HahnSeries {
        let terms = self.terms.iter().copied().filter(|(e, _)| keep(*e)).collect();
        HahnSeries { field: self.field, terms, prec: self.prec }
    }

    pub fn scale(&self, c: FqElement) -> HahnSeries {
        let fq = self.field.fq;
        if c.is_zero() {
            return HahnSeries::zero(self.field);
        }
        let terms = self.terms.iter().map(|&(e, d)| (e, fq.mul(c, d))).collect();
        HahnSeries { field: self.field, terms, prec: self.prec }
    }

    /// Multiplication by `t^e`.
    pub fn shift(&self, e: Rational) -> Result<HahnSeries> {
        self.field.check_exponent(e)?;
        let terms = self.terms.iter().map(|&(x, c)| (x + e, c)).collect();
        let prec = self.prec + e;
        if let NormExponent::Finite(m) = prec {
            self.field.check_exponent(m)?;
        }
        Ok(HahnSeries { field: self.field, terms, prec })
    }

    pub fn neg(&self) -> HahnSeries {
        let fq = self.field.fq;
        let terms = self.terms.iter().map(|&(e, c)| (e, fq.neg(c))).collect();
        HahnSeries { field: self.field, terms, prec: self.prec }
    }

    pub fn add(&self, other: &HahnSeries) -> HahnSeries {
        assert_eq!(self.field, other.field, "Hahn series over different fields");
        let prec = self.prec.min(other.prec);
        let fq = &self.field.fq;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() || j < b.len() {
            let next = if j >= b.len() || (i < a.len() && a[i].0 < b[j].0) {
                i += 1;
                a[i - 1]
            } else if i >= a.len() || b[j].0 < a[i].0 {
                j += 1;
                b[j - 1]
            } else {
                i += 1;
                j += 1;
                (a[i - 1].0, fq.add(a[i - 1].1, b[j - 1].1))
            };
            if NormExponent::Finite(next.0) >= prec {
                break;
            }
            if !next.1.is_zero() {
                out.push(next);
            }
        }
        HahnSeries { field: self.field, terms: out, prec }
    }

    pub fn sub(&self, other: &HahnSeries) -> HahnSeries {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &HahnSeries) -> HahnSeries {
        self.mul_truncated(other, NormExponent::Infinity)
    }

    /// Product with every term at or above `bound` discarded; the precision
    /// cap of the result is lowered to `bound` accordingly.
    pub fn mul_truncated(&self, other: &HahnSeries, bound: NormExponent) -> HahnSeries {
        assert_eq!(self.field, other.field, "Hahn series over different fields");
        if self.is_zero() || other.is_zero() {
            return HahnSeries::zero(self.field);
        }
        let va = self.valuation_lower_bound();
        let vb = other.valuation_lower_bound();
        let prec = (va + other.prec).min(vb + self.prec).min(bound);
        let (terms, _) = product_terms(&self.field.fq, &self.terms, &other.terms, prec.finite());
        HahnSeries { field: self.field, terms, prec }
    }

    /// Product of the exact parts keeping only exponents below `bound`,
    /// with the least exponent of any discarded term product.
    pub(crate) fn mul_below(&self, other: &HahnSeries, bound: Rational) -> (HahnSeries, NormExponent) {
        assert_eq!(self.field, other.field, "Hahn series over different fields");
        let (terms, dropped) = product_terms(&self.field.fq, &self.terms, &other.terms, Some(bound));
        (HahnSeries { field: self.field, terms, prec: NormExponent::Infinity }, dropped)
    }

    pub fn pow(&self, n: u32) -> HahnSeries {
        let mut acc = HahnSeries::one(self.field);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Inverse known modulo `t^target`.
    ///
    /// An exact monomial has an exact inverse, returned with infinite
    /// precision. Otherwise the result satisfies `a·result = 1 + O(t^{target + v(a)})`.
    pub fn inv(&self, target: Rational) -> Result<HahnSeries> {
        let fq = self.field.fq;
        let Some((v, c)) = self.leading_term() else {
            return Err(Error::ZeroInput);
        };
        let c_inv = fq.inv(c).expect("leading coefficient is nonzero");
        if self.is_monomial() {
            return HahnSeries::monomial(self.field, c_inv, -v);
        }
        if self.prec.minus(v + v) < target {
            return Err(Error::PrecisionExhausted("inverse needs more precision than the input carries"));
        }
        self.field.check_exponent(target)?;
        let rel = target + v;
        let unit_inv = HahnSeries::monomial(self.field, c_inv, -v)?;
        if !rel.is_positive() {
            return HahnSeries::big_o(self.field, target);
        }
        // b = a / (c t^v) = 1 + u, v(u) > 0; Newton iteration y ← y + y(1 - b y).
        let bound = NormExponent::Finite(rel);
        let b = self.exact_part().mul(&unit_inv).chop(rel);
        let one = HahnSeries::one(self.field);
        let mut y = one.clone();
        loop {
            let err = one.sub(&b.mul_truncated(&y, bound)).exact_part().chop(rel);
            if !err.has_terms() {
                break;
            }
            y = y.add(&y.mul_truncated(&err, bound)).exact_part().chop(rel);
        }
        let y = HahnSeries { field: self.field, terms: y.terms, prec: bound };
        Ok(y.mul(&unit_inv))
    }

    /// Exact approximant of `1/self` whose relative error has valuation at
    /// least `rel`; exact for monomials.
    pub fn inverse_approximant(&self, rel: Rational) -> Result<HahnSeries> {
        let v = self.valuation()?.finite().ok_or(Error::ZeroDivisor)?;
        let rel = if rel.is_positive() { rel } else { Rational::one() };
        let target = round_up_to_field(self.field, rel - v);
        Ok(self.exact_part().inv(target)?.exact_part())
    }

    /// `x ↦ x^{p^k}` on coefficients together with `t ↦ t^{p^k}`.
    pub fn frobenius(&self, k: i64) -> Result<HahnSeries> {
        let fq = self.field.fq;
        let p = Rational::from_integer(i64::from(self.field.p()));
        let factor = if k >= 0 { pow_q(p, k as u32) } else { pow_q(p, (-k) as u32).recip() };
        let mut terms = Vec::with_capacity(self.terms.len());
        for &(e, c) in &self.terms {
            let e2 = e * factor;
            self.field.check_exponent(e2)?;
            terms.push((e2, fq.frobenius(c, k)));
        }
        let prec = match self.prec {
            NormExponent::Finite(m) => {
                let m2 = m * factor;
                self.field.check_exponent(m2)?;
                NormExponent::Finite(m2)
            }
            NormExponent::Infinity => NormExponent::Infinity,
        };
        Ok(HahnSeries { field: self.field, terms, prec })
    }
}

fn pow_q(base: Rational, n: u32) -> Rational {
    (0..n).fold(Rational::one(), |acc, _| acc * base)
}

/// Smallest admissible exponent `≥ x` with denominator `p^K`.
pub(crate) fn round_up_to_field(field: BaseField, x: Rational) -> Rational {
    let den = (0..field.max_den_pow()).fold(1i64, |d, _| d * i64::from(field.p()));
    let num = (x * Rational::from_integer(den)).ceil().to_integer();
    Rational::new(num, den)
}

/// Largest denominator among the exponents; all are powers of `p`.
fn max_denom(terms: &[(Rational, FqElement)]) -> i64 {
    terms.iter().map(|(e, _)| *e.denom()).max().unwrap_or(1)
}

/// Sorted nonzero terms of `a·b` below `bound`, and the least discarded
/// exponent. Exponents are handled as integers over a common denominator.
fn product_terms(
    fq: &Fq,
    a: &[(Rational, FqElement)],
    b: &[(Rational, FqElement)],
    bound: Option<Rational>,
) -> (Vec<(Rational, FqElement)>, NormExponent) {
    if a.is_empty() || b.is_empty() {
        return (Vec::new(), NormExponent::Infinity);
    }
    let pairs = a.len().saturating_mul(b.len());
    let q = fq.order() as usize;
    if fq.p() == 2 && fq.degree() == 1 {
        product_with(a, b, bound, |acc, _, _| FqElement::from_raw(acc.code() ^ 1))
    } else if pairs >= 4 * q * q {
        let (add, mul) = fq.tables();
        product_with(a, b, bound, |acc, c1, c2| {
            let m = mul[c1.code() as usize * q + c2.code() as usize];
            add[acc.code() as usize * q + m.code() as usize]
        })
    } else {
        product_with(a, b, bound, |acc, c1, c2| fq.add(acc, fq.mul(c1, c2)))
    }
}

fn product_with<F>(
    a: &[(Rational, FqElement)],
    b: &[(Rational, FqElement)],
    bound: Option<Rational>,
    mul_add: F,
) -> (Vec<(Rational, FqElement)>, NormExponent)
where
    F: Fn(FqElement, FqElement, FqElement) -> FqElement,
{
    let den = max_denom(a).max(max_denom(b));
    let scale = |e: &Rational| (e * den).to_integer();
    let ka: Vec<i64> = a.iter().map(|(e, _)| scale(e)).collect();
    let kb: Vec<i64> = b.iter().map(|(e, _)| scale(e)).collect();
    let lo = ka[0] + kb[0];
    let hi_all = ka[ka.len() - 1] + kb[kb.len() - 1] + 1;
    let hi = match bound {
        Some(m) => hi_all.min((m * den).ceil().to_integer()),
        None => hi_all,
    };
    let mut dropped: Option<i64> = None;
    let width = (hi - lo).max(0) as usize;
    let pairs = a.len().saturating_mul(b.len());
    let mut out = Vec::new();
    // row `i` keeps the prefix of `b` with `ka[i] + kb[j] < hi`
    let mut row = |i: usize| {
        let len = kb.partition_point(|&k| ka[i] + k < hi);
        if len < kb.len() {
            let k = ka[i] + kb[len];
            dropped = Some(dropped.map_or(k, |d: i64| d.min(k)));
        }
        len
    };
    if width <= pairs.saturating_mul(4).max(64) {
        let mut dense = alloc::vec![FqElement::ZERO; width];
        for (i, &(_, c1)) in a.iter().enumerate() {
            let len = row(i);
            let base = ka[i] - lo;
            for (&k, &(_, c2)) in kb[..len].iter().zip(&b[..len]) {
                let slot = &mut dense[(base + k) as usize];
                *slot = mul_add(*slot, c1, c2);
            }
        }
        for (off, c) in dense.into_iter().enumerate() {
            if !c.is_zero() {
                out.push((Rational::new(lo + off as i64, den), c));
            }
        }
    } else {
        let mut acc: BTreeMap<i64, FqElement> = BTreeMap::new();
        for (i, &(_, c1)) in a.iter().enumerate() {
            let len = row(i);
            for (&k, &(_, c2)) in kb[..len].iter().zip(&b[..len]) {
                let slot = acc.entry(ka[i] + k).or_insert(FqElement::ZERO);
                *slot = mul_add(*slot, c1, c2);
            }
        }
        out.extend(acc.into_iter().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (Rational::new(k, den), c)));
    }
    let dropped = dropped.map_or(NormExponent::Infinity, |k| NormExponent::Finite(Rational::new(k, den)));
    (out, dropped)
}

fn accumulate(fq: &Fq, acc: &mut BTreeMap<Rational, FqElement>, e: Rational, c: FqElement) {
    if c.is_zero() {
        return;
    }
    let slot = acc.entry(e).or_insert(FqElement::ZERO);
    *slot = fq.add(*slot, c);
}

impl Add for &HahnSeries {
    type Output = HahnSeries;
    fn add(self, rhs: &HahnSeries) -> HahnSeries {
        HahnSeries::add(self, rhs)
    }
}

impl Sub for &HahnSeries {
    type Output = HahnSeries;
    fn sub(self, rhs: &HahnSeries) -> HahnSeries {
        HahnSeries::sub(self, rhs)
    }
}

impl Mul for &HahnSeries {
    type Output = HahnSeries;
    fn mul(self, rhs: &HahnSeries) -> HahnSeries {
        HahnSeries::mul(self, rhs)
    }
}

impl Neg for &HahnSeries {
    type Output = HahnSeries;
    fn neg(self) -> HahnSeries {
        HahnSeries::neg(self)
    }
}

pub(crate) fn fmt_t_power(f: &mut fmt::Formatter<'_>, var: &str, e: Rational) -> fmt::Result {
    if e.is_one() {
        f.write_str(var)
    } else if e.is_integer() && !e.is_negative() {
        write!(f, "{var}^{e}")
    } else {
        write!(f, "{var}^({e})")
    }
}

/// Formats `c·t^e` in the element syntax.
pub(crate) fn fmt_term(f: &mut fmt::Formatter<'_>, fq: &Fq, e: Rational, c: FqElement) -> fmt::Result {
    if e.is_zero() {
        return write!(f, "{}", fq.display(c));
    }
    if c != fq.one() {
        if fq.is_compound(c) {
            write!(f, "({})*", fq.display(c))?;
        } else {
            write!(f, "{}*", fq.display(c))?;
        }
    }
    fmt_t_power(f, "t", e)
}

impl fmt::Display for HahnSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fq = self.field.fq;
        let mut first = true;
        for &(e, c) in &self.terms {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            fmt_term(f, &fq, e, c)?;
        }
        if let NormExponent::Finite(m) = self.prec {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            f.write_str("O(")?;
            fmt_t_power(f, "t", m)?;
            f.write_str(")")?;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for HahnSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HahnSeries({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn f2() -> BaseField {
        BaseField::prime(2).unwrap()
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn series(field: BaseField, exps: &[(i64, i64)], prec: Option<(i64, i64)>) -> HahnSeries {
        let one = field.fq().one();
        let prec = prec.map_or(NormExponent::Infinity, |(n, d)| NormExponent::Finite(q(n, d)));
        HahnSeries::from_terms(field, exps.iter().map(|&(n, d)| (q(n, d), one)), prec).unwrap()
    }

    #[test]
    fn characteristic_two_cancellation() {
        let k = f2();
        let a = series(k, &[(1, 1), (2, 1)], None);
        let b = series(k, &[(2, 1)], None);
        assert_eq!(a.add(&b), series(k, &[(1, 1)], None));
        assert_eq!(a.add(&HahnSeries::zero(k)), a);
    }

    #[test]
    fn addition_respects_precision() {
        let k = f2();
        let a = series(k, &[(1, 2)], Some((3, 1)));
        let b = series(k, &[(4, 1)], None);
        let s = a.add(&b);
        assert_eq!(s, series(k, &[(1, 2)], Some((3, 1))));
        // re-adding the discarded term does not resurrect it
        assert_eq!(s.add(&b).truncate(NormExponent::int(3)), s);
    }

    #[test]
    fn products() {
        let k = f2();
        let one_t = series(k, &[(0, 1), (1, 1)], None);
        assert_eq!(one_t.mul(&one_t), series(k, &[(0, 1), (2, 1)], None));
        let a = series(k, &[(1, 2), (1, 1)], None);
        let b = series(k, &[(1, 2)], None);
        assert_eq!(a.mul(&b), series(k, &[(1, 1), (3, 2)], None));
        assert_eq!(a.mul(&HahnSeries::one(k)), a);
    }

    #[test]
    fn product_precision_rule() {
        let k = f2();
        // (t + O(t^3)) (t^2) = t^3 + O(t^5)
        let a = series(k, &[(1, 1)], Some((3, 1)));
        let b = series(k, &[(2, 1)], None);
        assert_eq!(a.mul(&b).prec(), NormExponent::int(5));
        // (t + O(t^3)) (1 + O(t^2)) = t + O(t^3)
        let c = series(k, &[(0, 1)], Some((2, 1)));
        let ac = a.mul(&c);
        assert_eq!(ac, series(k, &[(1, 1)], Some((3, 1))));
    }

    #[test]
    fn inverses() {
        let k = f2();
        let t = series(k, &[(1, 1)], None);
        assert_eq!(t.inv(q(4, 1)).unwrap(), series(k, &[(-1, 1)], None));
        let a = series(k, &[(0, 1), (1, 1)], None);
        let inv = a.inv(q(4, 1)).unwrap();
        assert_eq!(inv, series(k, &[(0, 1), (1, 1), (2, 1), (3, 1)], Some((4, 1))));
        let prod = a.mul(&inv);
        assert_eq!(prod, series(k, &[(0, 1)], Some((4, 1))));
        assert_eq!(HahnSeries::zero(k).inv(q(1, 1)), Err(Error::ZeroInput));
    }

    #[test]
    fn inverse_with_fractional_exponents_f3() {
        let k = BaseField::prime(3).unwrap();
        let fq = *k.fq();
        let a = HahnSeries::from_terms(
            k,
            [(q(1, 3), fq.from_int(2)), (q(1, 1), fq.one()), (q(4, 9), fq.one())],
            NormExponent::Infinity,
        )
        .unwrap();
        let inv = a.inv(q(5, 1)).unwrap();
        assert_eq!(inv.valuation().unwrap(), NormExponent::Finite(q(-1, 3)));
        let prod = a.mul(&inv);
        // a·inv = 1 + O(t^{5 + 1/3})
        assert_eq!(prod.terms(), &[(q(0, 1), fq.one())]);
        assert_eq!(prod.prec(), NormExponent::Finite(q(16, 3)));
    }

    #[test]
    fn inverse_refuses_more_than_available() {
        let k = f2();
        let a = series(k, &[(0, 1), (1, 1)], Some((3, 1)));
        assert!(matches!(a.inv(q(4, 1)), Err(Error::PrecisionExhausted(_))));
        assert!(a.inv(q(3, 1)).is_ok());
    }

    #[test]
    fn frobenius_round_trip() {
        let k = f2();
        let a = series(k, &[(1, 2), (1, 1)], None);
        assert_eq!(a.frobenius(1).unwrap(), series(k, &[(1, 1), (2, 1)], None));
        assert_eq!(a.frobenius(0).unwrap(), a);
        assert_eq!(a.frobenius(-1).unwrap().frobenius(1).unwrap(), a);
        let deep = series(k, &[(1, 256)], None);
        assert_eq!(deep.frobenius(-1), Err(Error::CapExceeded(8)));
    }

    #[test]
    fn valuation_cases() {
        let k = f2();
        assert_eq!(series(k, &[(3, 2), (2, 1)], None).valuation().unwrap(), NormExponent::Finite(q(3, 2)));
        assert_eq!(HahnSeries::zero(k).valuation().unwrap(), NormExponent::Infinity);
        assert_eq!(HahnSeries::big_o(k, q(2, 1)).unwrap().valuation(), Err(Error::ZeroWithinPrecision(q(2, 1))));
    }

    #[test]
    fn exponents_must_be_p_adic() {
        let k = f2();
        assert_eq!(HahnSeries::t_pow(k, q(1, 3)), Err(Error::BadExponent(q(1, 3))));
        assert_eq!(HahnSeries::t_pow(k, q(1, 512)), Err(Error::CapExceeded(8)));
    }

    #[test]
    fn display_syntax() {
        let k = f2();
        let a = series(k, &[(0, 1), (1, 2), (2, 1)], Some((3, 1)));
        assert_eq!(a.to_string(), "1 + t^(1/2) + t^2 + O(t^3)");
        assert_eq!(HahnSeries::zero(k).to_string(), "0");
        assert_eq!(series(k, &[(-1, 1)], None).to_string(), "t^(-1)");
    }
}
