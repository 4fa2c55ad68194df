//! Reduction of Tate series by a list of generators, ideal membership and
//! strong completion.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;


use crate::error::{Error, Result};
use crate::euclidean::{divide, gcd_bezout, DivisionConfig, DivisionStatus};
use crate::exponent::{NormExponent, Rational};
use crate::witt::WittSeries;

use super::{LeadingData, MultiIndex, TateSeries};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ReduceLimits {
    /// Bound on single-term reduction steps in one call to [`reduce`].
    pub max_steps: usize,
    /// Bound on rounds of [`membership`] and passes of [`strong_complete`].
    pub max_rounds: usize,
    /// Pairs whose lcm index exceeds this total degree are skipped during
    /// completion.
    pub degree_cap: u32,
}

impl Default for ReduceLimits {
    fn default() -> Self {
        ReduceLimits { max_steps: 10_000, max_rounds: 64, degree_cap: 6 }
    }
}

/// One step of [`reduce`]: the leading index treated, the generator used
/// (`None` when the term moved to the remainder), and whether the terms of
/// exponent below the round threshold at indices above it were left alone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReduceStep {
    pub index: MultiIndex,
    pub generator: Option<usize>,
    pub exponent: Rational,
    pub support_agrees: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReduceResult {
    /// `a_i` with `y = Σ a_i g_i + w` up to the residual.
    pub quotients: Vec<TateSeries>,
    /// `w`: no term of it is reducible by a generator.
    pub remainder: TateSeries,
    /// Least weighted exponent discarded or hidden by input precision.
    pub residual_exponent: NormExponent,
    /// `-log_p ε` for the generators, see [`leading_gap`].
    pub eps_gap: NormExponent,
    pub steps: Vec<ReduceStep>,
}

/// Least gap between the leading term of a generator and any of its terms
/// at a `⪯`-larger index; `∞` when no generator has such terms.
pub fn leading_gap(gens: &[TateSeries]) -> Result<NormExponent> {
    let mut gap = NormExponent::Infinity;
    for g in gens {
        let ld = g.leading_data()?;
        for (idx, c) in g.terms().range(ld.index.clone()..).skip(1) {
            let e = g.term_exponent(idx, c).exponent;
            gap = gap.min(e.minus(ld.exponent));
        }
    }
    Ok(gap)
}

fn check_all(y: &TateSeries, gens: &[TateSeries]) -> Result<()> {
    for g in gens {
        y.check_ctx(g)?;
    }
    Ok(())
}

/// Indices of terms of `x` above `above` whose exponent is below `threshold`.
fn support_above(x: &TateSeries, above: &MultiIndex, threshold: NormExponent) -> BTreeSet<MultiIndex> {
    x.terms()
        .range(above.clone()..)
        .filter(|(i, c)| *i != above && x.term_exponent(i, c).exponent < threshold)
        .map(|(i, _)| i.clone())
        .collect()
}

fn pick(leads: &[LeadingData], index: &MultiIndex, coeff_degree: i64) -> Option<usize> {
    leads
        .iter()
        .enumerate()
        .filter(|(_, ld)| ld.index.divides(index) && ld.coeff_degree <= coeff_degree)
        .min_by_key(|(k, ld)| (ld.coeff_degree, *k))
        .map(|(k, _)| k)
}

/// Writes `y = Σ a_i g_i + w` where no term of `w` has an index divisible
/// by a leading index `I_i` together with a coefficient of degree at least
/// `deg(c_i)`. Terms of weighted exponent at least `stop` are discarded.
pub fn reduce(
    y: &TateSeries,
    gens: &[TateSeries],
    stop: Rational,
    limits: &ReduceLimits,
    cfg: &DivisionConfig<'_>,
) -> Result<ReduceResult> {
    check_all(y, gens)?;
    let ctx = y.ctx().clone();
    let r = ctx.r();
    let leads = gens.iter().map(TateSeries::leading_data).collect::<Result<Vec<_>>>()?;
    let exact_gens: Vec<TateSeries> = gens.iter().map(TateSeries::exact_part).collect();
    let gap = leading_gap(gens)?;

    let mut residual = y.hidden_exponent();
    let (mut cur, dropped) = y.exact_part().chop(stop);
    residual = residual.min(dropped);
    let threshold = match cur.weighted_norm_exponent().exponent {
        NormExponent::Finite(e) => (gap + e).min(NormExponent::Finite(stop)),
        NormExponent::Infinity => NormExponent::Finite(stop),
    };
    let mut quotients = vec![TateSeries::zero(&ctx); gens.len()];
    let mut w = TateSeries::zero(&ctx);
    let mut steps = Vec::new();

    for _ in 0..limits.max_steps {
        cfg.check_cancel()?;
        if cur.terms().is_empty() {
            let hidden = exact_gens
                .iter()
                .zip(gens)
                .zip(&quotients)
                .filter(|((_, g), _)| !g.is_exact())
                .map(|((_, g), a)| g.hidden_exponent() + a.weighted_norm_exponent().exponent)
                .min()
                .unwrap_or(NormExponent::Infinity);
            return Ok(ReduceResult {
                quotients,
                remainder: w,
                residual_exponent: residual.min(hidden),
                eps_gap: gap,
                steps,
            });
        }
        let ld = cur.leading_data()?;
        let before = support_above(&cur.add(&w), &ld.index, threshold);
        let choice = pick(&leads, &ld.index, ld.coeff_degree);
        match choice {
            None => {
                let term = TateSeries::monomial(&ctx, ld.index.clone(), ld.coefficient.clone());
                w = w.add(&term);
                cur = cur.sub(&term);
            }
            Some(k) => {
                let g = &leads[k];
                let stop_c = stop - ctx.weight(&ld.index);
                let div = divide(&ld.coefficient, &g.coefficient, r, Some(stop_c), cfg)?;
                if div.status == DivisionStatus::PrecisionExhausted {
                    return Err(Error::PrecisionExhausted("coefficient division did not converge"));
                }
                let shift = ld.index.sub(&g.index).expect("leading index divides");
                quotients[k] = quotients[k].add(&TateSeries::monomial(&ctx, shift.clone(), div.quotient.clone()));
                let (next, dropped) = cur.sub(&exact_gens[k].mul_term(&shift, &div.quotient)).chop(stop);
                residual = residual.min(dropped);
                cur = next;
            }
        }
        let after = support_above(&cur.add(&w), &ld.index, threshold);
        steps.push(ReduceStep {
            index: ld.index,
            generator: choice,
            exponent: ld.exponent,
            support_agrees: before == after,
        });
    }
    Err(Error::PrecisionExhausted("reduction step limit reached"))
}

/// Norm exponents around one round of [`membership`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RoundLog {
    pub before: NormExponent,
    pub after: NormExponent,
    pub eps_gap: NormExponent,
    pub steps: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    /// `y - Σ b_i g_i` has weighted exponent at least `residual_exponent`.
    Certificate { coefficients: Vec<TateSeries>, residual_exponent: NormExponent, rounds: Vec<RoundLog> },
    /// Reduction stopped at a nonzero remainder that no generator reduces.
    Residual { remainder: TateSeries, rounds: Vec<RoundLog> },
}

/// Decides whether `y` lies in the ideal generated by `gens` up to weighted
/// exponent `target`, by repeated reduction with exact recomputation of the
/// difference between rounds.
///
/// A `Residual` answer is relative to `gens`: when `gens` is not a strong
/// Gröbner basis a member may still leave an irreducible remainder.
pub fn membership(
    y: &TateSeries,
    gens: &[TateSeries],
    target: Rational,
    limits: &ReduceLimits,
    cfg: &DivisionConfig<'_>,
) -> Result<Membership> {
    check_all(y, gens)?;
    let ctx = y.ctx().clone();
    let exact_gens: Vec<TateSeries> = gens.iter().map(TateSeries::exact_part).collect();
    let hidden = y.hidden_exponent();
    let gap = leading_gap(gens)?;
    let mut coefficients = vec![TateSeries::zero(&ctx); gens.len()];
    let mut cur = y.exact_part();
    let mut rounds = Vec::new();
    for _ in 0..limits.max_rounds {
        let e = cur.weighted_norm_exponent().exponent;
        if e >= NormExponent::Finite(target) {
            let gen_hidden = gens
                .iter()
                .zip(&coefficients)
                .filter(|(g, _)| !g.is_exact())
                .map(|(g, b)| g.hidden_exponent() + b.weighted_norm_exponent().exponent)
                .min()
                .unwrap_or(NormExponent::Infinity);
            return Ok(Membership::Certificate {
                coefficients,
                residual_exponent: e.min(hidden).min(gen_hidden),
                rounds,
            });
        }
        let ef = e.finite().expect("finite norm below target");
        let round_target = (gap + ef).min(NormExponent::Finite(target)).finite().expect("finite target");
        let red = reduce(&cur, gens, round_target, limits, cfg)?;
        if !red.remainder.terms().is_empty() {
            rounds.push(RoundLog { before: e, after: e, eps_gap: gap, steps: red.steps.len() });
            return Ok(Membership::Residual { remainder: red.remainder, rounds });
        }
        for (k, a) in red.quotients.iter().enumerate() {
            if !a.is_zero() {
                cur = cur.sub(&a.mul(&exact_gens[k]));
                coefficients[k] = coefficients[k].add(a);
            }
        }
        rounds.push(RoundLog {
            before: e,
            after: cur.weighted_norm_exponent().exponent,
            eps_gap: gap,
            steps: red.steps.len(),
        });
    }
    Err(Error::PrecisionExhausted("membership round limit reached"))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CompletionStatus {
    /// Every pair reduced to zero.
    Complete,
    /// A limit was hit; the basis generates the same ideal but may not be
    /// strong.
    Incomplete,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Completion {
    pub basis: Vec<TateSeries>,
    /// `basis[k] = Σ certificates[k][i]·input[i]`, up to the residual.
    pub certificates: Vec<Vec<TateSeries>>,
    pub residual_exponent: NormExponent,
    pub status: CompletionStatus,
}

/// Adds reduced S-pair and G-pair combinations until every pair reduces to
/// zero or a limit is hit.
pub fn strong_complete(
    gens: &[TateSeries],
    stop: Rational,
    limits: &ReduceLimits,
    cfg: &DivisionConfig<'_>,
) -> Result<Completion> {
    let Some(first) = gens.first() else {
        return Err(Error::ZeroInput);
    };
    check_all(first, gens)?;
    let ctx = first.ctx().clone();
    let r = ctx.r();
    let n = gens.len();
    let mut basis: Vec<TateSeries> = gens.iter().map(TateSeries::exact_part).collect();
    let mut certs: Vec<Vec<TateSeries>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { TateSeries::one(&ctx) } else { TateSeries::zero(&ctx) }).collect())
        .collect();
    let mut residual = gens.iter().map(TateSeries::hidden_exponent).min().unwrap_or(NormExponent::Infinity);
    let mut pairs: Vec<(usize, usize)> = (0..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    let mut skipped = false;

    for _ in 0..limits.max_rounds {
        if pairs.is_empty() {
            break;
        }
        let mut next_pairs = Vec::new();
        for (i, j) in core::mem::take(&mut pairs) {
            cfg.check_cancel()?;
            let li = basis[i].leading_data()?;
            let lj = basis[j].leading_data()?;
            let l = li.index.lcm(&lj.index);
            if l.total_degree() > limits.degree_cap {
                skipped = true;
                continue;
            }
            let si = l.sub(&li.index).expect("lcm");
            let sj = l.sub(&lj.index).expect("lcm");
            let gb = gcd_bezout(&li.coefficient, &lj.coefficient, r, Some(stop), cfg)?;
            residual = residual.min(gb.residual_exponent);
            let ci_g = exact_quotient(&li.coefficient, &gb.g, r, stop, cfg)?;
            let cj_g = exact_quotient(&lj.coefficient, &gb.g, r, stop, cfg)?;
            // S-pair: (c_j/g)·T^{L-I_i}·f_i - (c_i/g)·T^{L-I_j}·f_j
            let s_pair = [(i, si.clone(), cj_g), (j, sj.clone(), ci_g.neg())];
            // G-pair: a·T^{L-I_i}·f_i + b·T^{L-I_j}·f_j
            let g_pair = [(i, si, gb.a), (j, sj, gb.b)];
            for combo in [s_pair, g_pair] {
                let mut h = TateSeries::zero(&ctx);
                let mut cert = vec![TateSeries::zero(&ctx); n];
                for (k, shift, c) in &combo {
                    h = h.add(&basis[*k].mul_term(shift, c));
                    for (m, b) in certs[*k].iter().enumerate() {
                        cert[m] = cert[m].add(&b.mul_term(shift, c));
                    }
                }
                let (h, dropped) = h.chop(stop);
                residual = residual.min(dropped);
                if h.terms().is_empty() {
                    continue;
                }
                let red = reduce(&h, &basis, stop, limits, cfg)?;
                residual = residual.min(red.residual_exponent);
                if red.remainder.terms().is_empty() {
                    continue;
                }
                let mut new = h;
                for (k, a) in red.quotients.iter().enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    new = new.sub(&a.mul(&basis[k]));
                    for (m, b) in certs[k].iter().enumerate() {
                        cert[m] = cert[m].sub(&a.mul(b));
                    }
                }
                let (new, dropped) = new.chop(stop);
                residual = residual.min(dropped);
                if new.terms().is_empty() {
                    continue;
                }
                let k = basis.len();
                basis.push(new);
                certs.push(cert);
                next_pairs.extend((0..k).map(|i| (i, k)));
            }
        }
        pairs = next_pairs;
    }
    let status = if pairs.is_empty() && !skipped { CompletionStatus::Complete } else { CompletionStatus::Incomplete };
    Ok(Completion { basis, certificates: certs, residual_exponent: residual, status })
}

/// `x / g` for `g` known to divide `x`.
fn exact_quotient(
    x: &WittSeries,
    g: &WittSeries,
    r: Rational,
    stop: Rational,
    cfg: &DivisionConfig<'_>,
) -> Result<WittSeries> {
    if g.is_one() {
        return Ok(x.clone());
    }
    let d = divide(x, g, r, Some(stop), cfg)?;
    if d.status == DivisionStatus::PrecisionExhausted {
        return Err(Error::PrecisionExhausted("gcd quotient did not converge"));
    }
    Ok(d.quotient)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hahn::{BaseField, HahnSeries};
    use crate::newton::degree;
    use crate::tate::TateContext;
    use num_traits::Zero;
    use alloc::collections::BTreeMap;
    use alloc::sync::Arc;

    fn k2() -> BaseField {
        BaseField::prime(2).unwrap()
    }

    fn q(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    fn teich(e: i64) -> WittSeries {
        WittSeries::teichmuller(HahnSeries::t_pow(k2(), q(e)).unwrap())
    }

    fn pi() -> WittSeries {
        WittSeries::pi_pow(k2(), 1)
    }

    fn ctx(n: usize) -> Arc<TateContext> {
        TateContext::new(k2(), vec![Rational::zero(); n], q(1)).unwrap()
    }

    fn leading_indices(basis: &[TateSeries]) -> Result<BTreeMap<MultiIndex, i64>> {
        let mut out = BTreeMap::new();
        for g in basis {
            let ld = g.leading_data()?;
            let e = out.entry(ld.index).or_insert(ld.coeff_degree);
            *e = (*e).min(ld.coeff_degree);
        }
        Ok(out)
    }

    fn cfg() -> DivisionConfig<'static> {
        DivisionConfig::default()
    }

    #[test]
    fn reduce_square_by_linear() {
        let c = ctx(1);
        let g = TateSeries::polynomial(&c, &[(&[1], WittSeries::one(k2())), (&[0], teich(1).neg())]).unwrap();
        let y = TateSeries::polynomial(&c, &[(&[2], WittSeries::one(k2()))]).unwrap();
        let red = reduce(&y, core::slice::from_ref(&g), q(20), &ReduceLimits::default(), &cfg()).unwrap();
        let a = TateSeries::polynomial(&c, &[(&[1], WittSeries::one(k2())), (&[0], teich(1))]).unwrap();
        assert_eq!(red.quotients, [a]);
        assert_eq!(red.remainder, TateSeries::constant(&c, teich(2)));
        assert_eq!(red.residual_exponent, NormExponent::Infinity);
        assert_eq!(red.eps_gap, NormExponent::Infinity);
        assert!(red.steps.iter().all(|s| s.support_agrees));
    }

    #[test]
    fn irreducible_constant_moves_to_remainder() {
        let c = ctx(1);
        let g = TateSeries::variable(&c, 0);
        let y = TateSeries::constant(&c, teich(1));
        let red = reduce(&y, &[g], q(20), &ReduceLimits::default(), &cfg()).unwrap();
        assert!(red.quotients[0].is_zero());
        assert_eq!(red.remainder, y);
        assert_eq!(red.steps[0].generator, None);
    }

    #[test]
    fn product_has_certificate() {
        let c = ctx(2);
        let g1 = TateSeries::polynomial(&c, &[(&[1, 0], WittSeries::one(k2())), (&[0, 0], teich(1).neg())]).unwrap();
        let g2 = TateSeries::polynomial(&c, &[(&[0, 1], WittSeries::one(k2())), (&[0, 0], teich(2).neg())]).unwrap();
        let y = g1.mul(&g2);
        let gens = [g1, g2];
        let Membership::Certificate { coefficients, residual_exponent, .. } =
            membership(&y, &gens, q(20), &ReduceLimits::default(), &cfg()).unwrap()
        else {
            panic!("product of generators is a member");
        };
        let back = coefficients[0].mul(&gens[0]).add(&coefficients[1].mul(&gens[1]));
        assert_eq!(y.sub(&back).weighted_norm_exponent().exponent, residual_exponent);
        assert!(residual_exponent >= q(20));
    }

    #[test]
    fn one_is_not_a_member() {
        let c = ctx(1);
        let g = TateSeries::polynomial(&c, &[(&[1], WittSeries::one(k2())), (&[0], teich(1).neg())]).unwrap();
        let one = TateSeries::one(&c);
        match membership(&one, &[g], q(20), &ReduceLimits::default(), &cfg()).unwrap() {
            Membership::Residual { remainder, .. } => assert_eq!(remainder, one),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn gap_drives_several_rounds() {
        // leading term T2, with ϖT1 above it at gap 1
        let c = ctx(2);
        let g = TateSeries::polynomial(&c, &[(&[0, 1], WittSeries::one(k2())), (&[1, 0], pi())]).unwrap();
        assert_eq!(leading_gap(core::slice::from_ref(&g)).unwrap(), NormExponent::int(1));
        let y = g.mul(&TateSeries::variable(&c, 1));
        match membership(&y, core::slice::from_ref(&g), q(6), &ReduceLimits::default(), &cfg()).unwrap() {
            Membership::Certificate { coefficients, residual_exponent, .. } => {
                assert!(residual_exponent >= q(6));
                let diff = y.sub(&coefficients[0].mul(&g));
                assert_eq!(diff.weighted_norm_exponent().exponent, residual_exponent);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn completion_finds_unit_multiple() {
        let c = ctx(1);
        let f1 = TateSeries::polynomial(&c, &[(&[1], pi())]).unwrap();
        let f2 = TateSeries::polynomial(&c, &[(&[1], pi().add(&teich(1)))]).unwrap();
        let out = strong_complete(&[f1.clone(), f2.clone()], q(20), &ReduceLimits::default(), &cfg()).unwrap();
        assert_eq!(out.status, CompletionStatus::Complete);
        let t1 = MultiIndex::unit(1, 0);
        let unit_t1 = out.basis.iter().any(|b| {
            b.terms().len() == 1
                && b.coeff(&t1).is_some_and(|c| degree(c, q(1)).unwrap() == crate::newton::Degree::Finite(0))
        });
        assert!(unit_t1, "{:?}", out.basis);
        for (b, cert) in out.basis.iter().zip(&out.certificates) {
            let back = cert[0].mul(&f1).add(&cert[1].mul(&f2));
            assert!(b.sub(&back).weighted_norm_exponent().exponent >= out.residual_exponent);
        }
        assert_eq!(leading_indices(&out.basis).unwrap()[&t1], 0);
    }

    #[test]
    fn single_generator_is_complete() {
        let c = ctx(2);
        let g = TateSeries::polynomial(&c, &[(&[1, 1], WittSeries::one(k2())), (&[0, 0], teich(3))]).unwrap();
        let out = strong_complete(core::slice::from_ref(&g), q(20), &ReduceLimits::default(), &cfg()).unwrap();
        assert_eq!(out.basis, [g]);
        assert_eq!(out.status, CompletionStatus::Complete);
    }

    #[test]
    fn mismatched_contexts() {
        let a = TateSeries::one(&ctx(1));
        let b = TateSeries::one(&ctx(2));
        assert_eq!(reduce(&a, &[b], q(5), &ReduceLimits::default(), &cfg()).unwrap_err(), Error::ContextMismatch);
    }
}
