//! Weighted Tate algebras `A^r{T₁/ρ₁, …, Tₙ/ρₙ}` with `ρᵢ = p^{-wᵢ}`.
//!
//! Norms use the weighted Gauss norm: the exponent of `Σ c_I T^I` is the
//! least `λ_r`-exponent of `c_I` plus `Σ iₖ wₖ` over the terms.

mod index;
mod reduce;

use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::exponent::{NormExponent, Rational};
use crate::hahn::BaseField;
use crate::newton::degree;
use crate::witt::{NormValue, WittSeries};

pub use index::{graded_lex_cmp, minimal_indices, MultiIndex};
pub use reduce::{
    leading_gap, membership, reduce, strong_complete, Completion, CompletionStatus, Membership, ReduceLimits,
    ReduceResult, ReduceStep, RoundLog,
};

/// Field, radii and base radius shared by the elements of one algebra.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TateContext {
    field: BaseField,
    weights: Vec<Rational>,
    r: Rational,
}

impl TateContext {
    /// `weights[i] = wᵢ` with `ρᵢ = p^{-wᵢ}`; `r > 0` is the base radius.
    pub fn new(field: BaseField, weights: Vec<Rational>, r: Rational) -> Result<Arc<TateContext>> {
        if !r.is_positive() {
            return Err(Error::BadInterval("base radius must be positive"));
        }
        Ok(Arc::new(TateContext { field, weights, r }))
    }

    pub fn field(&self) -> BaseField {
        self.field
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn r(&self) -> Rational {
        self.r
    }

    pub fn n_vars(&self) -> usize {
        self.weights.len()
    }

    /// `Σ iₖ wₖ`, the exponent of `|T^I|_ρ`.
    pub fn weight(&self, index: &MultiIndex) -> Rational {
        index.entries().iter().zip(&self.weights).map(|(&i, w)| Rational::from_integer(i64::from(i)) * w).sum()
    }
}

/// Leading index, leading coefficient and the degree of that coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeadingData {
    pub index: MultiIndex,
    pub coefficient: WittSeries,
    pub coeff_degree: i64,
    pub exponent: Rational,
}

#[derive(Clone, PartialEq, Eq)]
pub struct TateSeries {
    ctx: Arc<TateContext>,
    terms: BTreeMap<MultiIndex, WittSeries>,
    /// Terms whose weighted exponent reaches this bound are not stored.
    prec: NormExponent,
}

impl TateSeries {
    pub fn zero(ctx: &Arc<TateContext>) -> TateSeries {
        TateSeries { ctx: ctx.clone(), terms: BTreeMap::new(), prec: NormExponent::Infinity }
    }

    pub fn constant(ctx: &Arc<TateContext>, c: WittSeries) -> TateSeries {
        TateSeries::monomial(ctx, MultiIndex::zero(ctx.n_vars()), c)
    }

    pub fn one(ctx: &Arc<TateContext>) -> TateSeries {
        TateSeries::constant(ctx, WittSeries::one(ctx.field))
    }

    /// `c·T^I`.
    pub fn monomial(ctx: &Arc<TateContext>, index: MultiIndex, c: WittSeries) -> TateSeries {
        assert_eq!(index.len(), ctx.n_vars(), "index length differs from the number of variables");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(index, c);
        }
        TateSeries { ctx: ctx.clone(), terms, prec: NormExponent::Infinity }
    }

    /// The variable `T_{k+1}`.
    pub fn variable(ctx: &Arc<TateContext>, k: usize) -> TateSeries {
        TateSeries::monomial(ctx, MultiIndex::unit(ctx.n_vars(), k), WittSeries::one(ctx.field))
    }

    /// Builds a series from `(I, c_I)` pairs; repeated indices are summed.
    /// Coefficients must lie in `A^r`.
    pub fn from_terms<I>(ctx: &Arc<TateContext>, terms: I) -> Result<TateSeries>
    where
        I: IntoIterator<Item = (MultiIndex, WittSeries)>,
    {
        let mut map: BTreeMap<MultiIndex, WittSeries> = BTreeMap::new();
        for (idx, c) in terms {
            if idx.len() != ctx.n_vars() {
                return Err(Error::LengthMismatch);
            }
            c.check_integral()?;
            add_into(&mut map, idx, &c);
        }
        Ok(TateSeries { ctx: ctx.clone(), terms: map, prec: NormExponent::Infinity })
    }

    pub fn ctx(&self) -> &Arc<TateContext> {
        &self.ctx
    }

    pub fn terms(&self) -> &BTreeMap<MultiIndex, WittSeries> {
        &self.terms
    }

    pub fn coeff(&self, index: &MultiIndex) -> Option<&WittSeries> {
        self.terms.get(index)
    }

    pub fn prec(&self) -> NormExponent {
        self.prec
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty() && self.prec.is_infinite()
    }

    pub fn is_exact(&self) -> bool {
        self.prec.is_infinite() && self.terms.values().all(WittSeries::is_exact)
    }

    fn same_ctx(&self, other: &TateSeries) -> bool {
        Arc::ptr_eq(&self.ctx, &other.ctx) || *self.ctx == *other.ctx
    }

    pub(crate) fn check_ctx(&self, other: &TateSeries) -> Result<()> {
        if self.same_ctx(other) {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    fn with_terms(&self, terms: BTreeMap<MultiIndex, WittSeries>, prec: NormExponent) -> TateSeries {
        TateSeries { ctx: self.ctx.clone(), terms, prec }
    }

    /// Exponent of `|c·T^I|_ρ`.
    pub fn term_exponent(&self, index: &MultiIndex, c: &WittSeries) -> NormValue {
        let v = c.gauss_norm_exponent(self.ctx.r);
        NormValue { exponent: v.exponent + self.ctx.weight(index), reliable: v.reliable }
    }

    /// `|f|_ρ` as an exponent.
    pub fn weighted_norm_exponent(&self) -> NormValue {
        let mut e = NormExponent::Infinity;
        let mut reliable = true;
        for (idx, c) in &self.terms {
            let v = self.term_exponent(idx, c);
            e = e.min(v.exponent);
            reliable &= v.reliable;
        }
        if self.prec < e {
            return NormValue { exponent: self.prec, reliable: false };
        }
        NormValue { exponent: e, reliable }
    }

    pub fn neg(&self) -> TateSeries {
        let terms = self.terms.iter().map(|(i, c)| (i.clone(), c.neg())).collect();
        self.with_terms(terms, self.prec)
    }

    pub fn add(&self, other: &TateSeries) -> TateSeries {
        assert!(self.same_ctx(other), "Tate series from different algebras");
        let mut map = self.terms.clone();
        for (i, c) in &other.terms {
            add_into(&mut map, i.clone(), c);
        }
        let prec = self.prec.min(other.prec);
        map.retain(|i, c| self.term_exponent(i, c).exponent < prec);
        self.with_terms(map, prec)
    }

    pub fn sub(&self, other: &TateSeries) -> TateSeries {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &TateSeries) -> TateSeries {
        assert!(self.same_ctx(other), "Tate series from different algebras");
        if self.is_zero() || other.is_zero() {
            return TateSeries::zero(&self.ctx);
        }
        let ea = self.weighted_norm_exponent().exponent;
        let eb = other.weighted_norm_exponent().exponent;
        let prec = (ea + other.prec).min(eb + self.prec);
        let mut map: BTreeMap<MultiIndex, WittSeries> = BTreeMap::new();
        for (i, a) in &self.terms {
            for (j, b) in &other.terms {
                add_into(&mut map, i.add(j), &a.mul(b));
            }
        }
        if !prec.is_infinite() {
            map.retain(|i, c| self.term_exponent(i, c).exponent < prec);
        }
        self.with_terms(map, prec)
    }

    /// Multiplication by a coefficient `c ∈ A^r`.
    pub fn scale(&self, c: &WittSeries) -> TateSeries {
        if c.is_zero() {
            return TateSeries::zero(&self.ctx);
        }
        let mut map = BTreeMap::new();
        for (i, a) in &self.terms {
            let v = a.mul(c);
            if !v.is_zero() {
                map.insert(i.clone(), v);
            }
        }
        let prec = self.prec + c.gauss_norm_exponent(self.ctx.r).exponent;
        self.with_terms(map, prec)
    }

    /// Multiplication by `c·T^K`.
    pub fn mul_term(&self, k: &MultiIndex, c: &WittSeries) -> TateSeries {
        if c.is_zero() {
            return TateSeries::zero(&self.ctx);
        }
        let terms = self
            .terms
            .iter()
            .map(|(i, a)| (i.add(k), a.mul(c)))
            .filter(|(_, v)| !v.is_zero())
            .collect();
        let prec = self.prec + (c.gauss_norm_exponent(self.ctx.r).exponent + self.ctx.weight(k));
        self.with_terms(terms, prec)
    }

    /// Drops the terms `ϖⁿ[c]T^I` whose weighted exponent reaches `bound`,
    /// returning the kept part and the least dropped exponent.
    pub fn chop(&self, bound: Rational) -> (TateSeries, NormExponent) {
        let r = self.ctx.r;
        let mut dropped = NormExponent::Infinity;
        let mut map = BTreeMap::new();
        for (i, c) in &self.terms {
            let w = self.ctx.weight(i);
            let (kept, d) = c.chop_lambda(r, bound - w);
            dropped = dropped.min(d + w);
            if !kept.is_zero() {
                map.insert(i.clone(), kept);
            }
        }
        (self.with_terms(map, self.prec), dropped)
    }

    /// Least weighted exponent that precision could hide, `∞` if exact.
    pub(crate) fn hidden_exponent(&self) -> NormExponent {
        let mut h = self.prec;
        for (i, c) in &self.terms {
            h = h.min(c.hidden_exponent(self.ctx.r) + self.ctx.weight(i));
        }
        h
    }

    pub fn exact_part(&self) -> TateSeries {
        let terms = self
            .terms
            .iter()
            .map(|(i, c)| (i.clone(), c.exact_part()))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        self.with_terms(terms, NormExponent::Infinity)
    }

    /// Indices attaining the norm, ascending under `⪯`.
    fn norm_attaining(&self) -> Result<(Rational, Vec<&MultiIndex>)> {
        let v = self.weighted_norm_exponent();
        let e = v.require()?;
        let NormExponent::Finite(e) = e else {
            return Err(Error::ZeroInput);
        };
        if self.prec <= NormExponent::Finite(e) {
            return Err(Error::PrecisionExhausted("norm-attaining terms not determined at this precision"));
        }
        let idx = self
            .terms
            .iter()
            .filter(|(i, c)| self.term_exponent(i, c).exponent == NormExponent::Finite(e))
            .map(|(i, _)| i)
            .collect();
        Ok((e, idx))
    }

    /// Leading index (the `⪯`-largest index attaining the norm), its
    /// coefficient, and the degree of that coefficient at `r`.
    pub fn leading_data(&self) -> Result<LeadingData> {
        if self.is_zero() {
            return Err(Error::ZeroInput);
        }
        let (e, idx) = self.norm_attaining()?;
        let index = (*idx.last().expect("some term attains the norm")).clone();
        let coefficient = self.terms[&index].clone();
        let coeff_degree = degree(&coefficient, self.ctx.r)?.finite().expect("coefficient is nonzero");
        Ok(LeadingData { index, coefficient, coeff_degree, exponent: e })
    }
}

fn add_into(map: &mut BTreeMap<MultiIndex, WittSeries>, idx: MultiIndex, c: &WittSeries) {
    let v = match map.remove(&idx) {
        Some(prev) => prev.add(c),
        None => c.clone(),
    };
    if !v.is_zero() {
        map.insert(idx, v);
    }
}

fn is_single_term(c: &WittSeries) -> bool {
    c.tail().is_none() && c.coeffs().len() == 1 && c.coeffs().values().all(|x| x.terms().len() <= 1 && x.is_exact())
}

impl fmt::Display for TateSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (idx, c) in self.terms.iter().rev() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            if idx.is_zero() {
                write!(f, "{c}")?;
                continue;
            }
            if !c.is_one() {
                if is_single_term(c) {
                    write!(f, "{c}*")?;
                } else {
                    write!(f, "({c})*")?;
                }
            }
            write!(f, "{idx}")?;
        }
        if let NormExponent::Finite(e) = self.prec {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            if e.is_integer() && !e.is_negative() {
                write!(f, "O(rho^{e})")?;
            } else {
                write!(f, "O(rho^({e}))")?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl TateSeries {
    /// `Σ c_I T^I` with the terms given in any order; a convenience for
    /// building polynomials.
    pub fn polynomial(ctx: &Arc<TateContext>, terms: &[(&[u32], WittSeries)]) -> Result<TateSeries> {
        TateSeries::from_terms(ctx, terms.iter().map(|(i, c)| (MultiIndex::new(i.to_vec()), c.clone())))
    }

    /// The largest total degree among stored terms.
    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(MultiIndex::total_degree).max().unwrap_or(0)
    }

    /// Whether `prec` is finite (some terms were truncated).
    pub fn is_truncated(&self) -> bool {
        !self.prec.is_infinite()
    }
}

impl fmt::Debug for TateSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TateSeries({self})")
    }
}
