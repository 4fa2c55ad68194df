//! Polynomials over `L` and their roots of positive valuation.
//!
//! In the characteristic-`p` model an element with finitely many `ϖ`-terms
//! is a polynomial in `ϖ` over `L`, so roots are found by Newton-Puiseux:
//! each segment of the Newton polygon fixes the valuation of the next term,
//! the residue polynomial over `F_q` fixes its coefficient, and the
//! polynomial is shifted by that term before the next pass.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::exponent::Rational;
use crate::fq::{Fq, FqElement};
use crate::hahn::{BaseField, HahnSeries};
use crate::newton::hull;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct LPoly {
    field: BaseField,
    /// `coeffs[n]` multiplies `Xⁿ`.
    coeffs: Vec<HahnSeries>,
}

/// A root, exact or known up to terms of valuation at least `error_valuation`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Root {
    pub value: HahnSeries,
    pub error_valuation: Option<Rational>,
}

impl LPoly {
    pub fn new(field: BaseField, mut coeffs: Vec<HahnSeries>) -> LPoly {
        while coeffs.last().is_some_and(HahnSeries::is_zero) {
            coeffs.pop();
        }
        LPoly { field, coeffs }
    }

    /// `P(a + X)`, by Horner's rule.
    pub fn taylor_shift(&self, a: &HahnSeries) -> LPoly {
        let mut out: Vec<HahnSeries> = Vec::new();
        for c in self.coeffs.iter().rev() {
            // out ← out·(X + a) + c
            let mut next = vec![HahnSeries::zero(self.field); out.len() + 1];
            for (i, o) in out.iter().enumerate() {
                next[i + 1] = next[i + 1].add(o);
                next[i] = next[i].add(&o.mul(a));
            }
            next[0] = next[0].add(c);
            out = next;
        }
        LPoly::new(self.field, out)
    }

    /// Number of vanishing low coefficients.
    fn low_order(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    fn shift_down(&self, k: usize) -> LPoly {
        LPoly { field: self.field, coeffs: self.coeffs[k..].to_vec() }
    }

    fn points(&self) -> Vec<(i64, Rational)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter_map(|(n, c)| c.leading_term().map(|(v, _)| (n as i64, v)))
            .collect()
    }
}

/// Roots of the residue polynomial in `F_q^×`, with multiplicity.
fn residue_roots(fq: &Fq, poly: &[FqElement]) -> Vec<(FqElement, usize)> {
    let mut out = Vec::new();
    for c in fq.elements().filter(|c| !c.is_zero()) {
        let mut cur = poly.to_vec();
        let mut mult = 0;
        while cur.len() > 1 && eval(fq, &cur, c).is_zero() {
            cur = deflate(fq, &cur, c);
            mult += 1;
        }
        if mult > 0 {
            out.push((c, mult));
        }
    }
    out
}

fn eval(fq: &Fq, poly: &[FqElement], c: FqElement) -> FqElement {
    poly.iter().rev().fold(fq.zero(), |acc, &a| fq.add(fq.mul(acc, c), a))
}

/// Quotient of `poly` by `Y - c`, assuming `c` is a root.
fn deflate(fq: &Fq, poly: &[FqElement], c: FqElement) -> Vec<FqElement> {
    let d = poly.len() - 1;
    let mut q = vec![fq.zero(); d];
    let mut acc = fq.zero();
    for i in (0..d).rev() {
        acc = fq.add(fq.mul(acc, c), poly[i + 1]);
        q[i] = acc;
    }
    q
}

struct Branch {
    poly: LPoly,
    prefix: HahnSeries,
    lower: Rational,
    need: usize,
}

/// All roots of `poly` with valuation above `lower`, with multiplicity.
///
/// Expansion stops once the next term would have valuation at least
/// `target`; such roots carry that valuation as their error bound.
pub(crate) fn roots(poly: &LPoly, lower: Rational, target: Rational, max_steps: usize) -> Result<Vec<Root>> {
    let field = poly.field;
    let fq = *field.fq();
    let mut out = Vec::new();
    let need = hull(&poly.shift_down(poly.low_order()).points())
        .iter()
        .filter(|s| Rational::from_integer(1) / s.slope > lower)
        .map(|s| s.multiplicity as usize)
        .sum::<usize>()
        + poly.low_order();
    let mut stack =
        vec![Branch { poly: poly.clone(), prefix: HahnSeries::zero(field), lower, need }];
    let mut steps = 0;
    while let Some(b) = stack.pop() {
        steps += 1;
        if steps > max_steps {
            return Err(Error::PrecisionExhausted("root expansion step limit reached"));
        }
        let k0 = b.poly.low_order().min(b.need);
        out.extend((0..k0).map(|_| Root { value: b.prefix.clone(), error_valuation: None }));
        let mut need = b.need - k0;
        if need == 0 {
            continue;
        }
        let q = b.poly.shift_down(b.poly.low_order());
        let pts = q.points();
        for seg in hull(&pts) {
            let nu = Rational::from_integer(1) / seg.slope;
            if nu <= b.lower || need == 0 {
                continue;
            }
            let m = seg.multiplicity as usize;
            need = need.saturating_sub(m);
            if !b.prefix.is_zero() && nu >= target {
                out.extend((0..m).map(|_| Root { value: b.prefix.clone(), error_valuation: Some(nu) }));
                continue;
            }
            match field.check_exponent(nu) {
                Ok(()) => {}
                Err(Error::BadExponent(_)) => return Err(Error::NeedsFieldExtension),
                Err(e) => return Err(e),
            }
            let (n1, v1) = seg.start;
            let level = v1 + Rational::from_integer(n1) * nu;
            let residue: Vec<FqElement> = (seg.start.0..=seg.end.0)
                .map(|n| match q.coeffs[n as usize].leading_term() {
                    Some((v, c)) if v + Rational::from_integer(n) * nu == level => c,
                    _ => fq.zero(),
                })
                .collect();
            let found = residue_roots(&fq, &residue);
            if found.iter().map(|(_, k)| k).sum::<usize>() < m {
                return Err(Error::NeedsFieldExtension);
            }
            for (c, k) in found {
                let term = HahnSeries::monomial(field, c, nu)?;
                stack.push(Branch {
                    poly: q.taylor_shift(&term),
                    prefix: b.prefix.add(&term),
                    lower: nu,
                    need: k,
                });
            }
        }
    }
    Ok(out)
}
