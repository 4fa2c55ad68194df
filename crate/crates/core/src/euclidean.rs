//! Euclidean structure of `A^r`: division with remainder, gcd with Bézout
//! coefficients, and inversion of units of `B^I`.
//!
//! All arithmetic is exact. Approximation enters only through explicit
//! truncation of terms whose `λ_r`-exponent reaches a stop exponent; the
//! least exponent ever discarded is reported as the residual exponent, so
//! `y - z·x - w` is known to have `λ_r`-exponent at least that value.

use alloc::vec::Vec;
use core::sync::atomic::{AtomicBool, Ordering};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exponent::{NormExponent, Rational};
use crate::hahn::HahnSeries;
use crate::newton::{degree, Degree};
use crate::witt::{Interval, WittSeries};

/// Tuning knobs shared by the Euclidean operations.
#[derive(Clone, Copy, Debug)]
pub struct DivisionConfig<'a> {
    /// `ϖ`-precision assumed for exact inputs; the default stop exponent is
    /// twice this value.
    pub pi_cap: i64,
    /// Bound on the number of outer division rounds.
    pub max_rounds: usize,
    /// Attempts with a raised internal stop before gcd or inversion give up.
    pub retries: u32,
    /// Polled between rounds; setting it aborts with [`Error::Cancelled`].
    pub cancel: Option<&'a AtomicBool>,
}

impl Default for DivisionConfig<'_> {
    fn default() -> Self {
        DivisionConfig { pi_cap: 16, max_rounds: 20_000, retries: 4, cancel: None }
    }
}

impl DivisionConfig<'_> {
    pub(crate) fn check_cancel(&self) -> Result<()> {
        match self.cancel {
            Some(flag) if flag.load(Ordering::Relaxed) => Err(Error::Cancelled),
            _ => Ok(()),
        }
    }

    /// `2·N` for the least `ϖ`-precision `N` among inexact inputs, or
    /// `2·pi_cap` when all inputs are exact; never above what the inputs'
    /// precision can certify at `r`.
    pub fn default_stop(&self, inputs: &[&WittSeries], r: Rational) -> Rational {
        let n = inputs.iter().filter_map(|x| x.prec_pi()).min().unwrap_or(self.pi_cap);
        let mut stop = Rational::from_integer(2 * n);
        for x in inputs {
            if let NormExponent::Finite(h) = x.hidden_exponent(r) {
                stop = stop.min(h);
            }
        }
        stop
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DivisionStatus {
    /// Nothing was discarded: `y = z·x + w` holds exactly.
    Exact,
    /// Terms at or beyond the stop exponent were discarded.
    Converged,
    /// The round limit was reached before the degree condition held.
    PrecisionExhausted,
}

impl DivisionStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            DivisionStatus::Exact => "Exact",
            DivisionStatus::Converged => "Converged",
            DivisionStatus::PrecisionExhausted => "PrecisionExhausted",
        }
    }
}

/// One pass of the inner loop: `y = z·x + w` with either `deg(w) < deg(x)`
/// or `λ_r(w) ≤ ε·λ_r(y)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepResult {
    pub quotient: WittSeries,
    pub remainder: WittSeries,
    /// `-log_p ε`: the least gap between `λ_r(x)` and the exponent of a term
    /// of `x` above its degree. `∞` (that is, `ε = 0`) when there is none.
    pub eps_gap: NormExponent,
    /// Least exponent of a discarded term.
    pub residual: NormExponent,
    /// The strictly decreasing sequence `N_l` of the inner loop.
    pub n_trace: Vec<i64>,
}

/// Bookkeeping for one outer round of [`divide`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RoundInfo {
    pub before: NormExponent,
    pub after: NormExponent,
    pub eps_gap: NormExponent,
    pub n_trace: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisionResult {
    pub quotient: WittSeries,
    pub remainder: WittSeries,
    pub residual_exponent: NormExponent,
    pub status: DivisionStatus,
    pub stop: Rational,
    pub rounds: Vec<RoundInfo>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GcdResult {
    pub g: WittSeries,
    pub a: WittSeries,
    pub b: WittSeries,
    /// `λ_r`-exponent of `a·x + b·y - g`, recomputed from scratch.
    pub residual_exponent: NormExponent,
    pub stop: Rational,
    pub rounds: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitInverse {
    pub value: WittSeries,
    /// `λ_I`-exponent of `x·value - 1`.
    pub residual_exponent: NormExponent,
}

fn lambda(x: &WittSeries, r: Rational) -> NormExponent {
    x.gauss_norm_exponent(r).exponent
}

fn finite(e: NormExponent) -> Rational {
    e.finite().expect("nonzero element has a finite norm")
}

fn finite_degree(x: &WittSeries, r: Rational) -> Result<i64> {
    match degree(x, r)? {
        Degree::Finite(m) => Ok(m),
        Degree::NegInfinity => Err(Error::ZeroDivisor),
    }
}

/// `-log_p ε` for the divisor `x` of degree `m`.
fn eps_gap(x: &WittSeries, r: Rational, m: i64) -> NormExponent {
    let ex = finite(lambda(x, r));
    x.points()
        .into_iter()
        .filter(|&(n, _)| n > m)
        .map(|(n, v)| NormExponent::Finite(Rational::from_integer(n) + r * v - ex))
        .min()
        .unwrap_or(NormExponent::Infinity)
}

/// `ϖ^{-k}`-shift of the part of `y` in degrees `≥ k`, each coefficient
/// multiplied by `c`, keeping terms of `λ_r`-exponent below `bound`.
fn shifted_top(y: &WittSeries, k: i64, c: &HahnSeries, r: Rational, bound: Rational) -> WittSeries {
    WittSeries::from_coeffs(
        y.field(),
        y.coeffs().range(k..).map(|(n, yn)| (n - k, yn.mul_below(c, (bound - Rational::from_integer(n - k)) / r).0)),
        None,
    )
}

fn check_inputs(y: &WittSeries, x: &WittSeries) -> Result<()> {
    if x.is_zero() {
        return Err(Error::ZeroDivisor);
    }
    y.check_integral()?;
    x.check_integral()
}

/// One application of the division lemma to exact `y` and `x`.
///
/// Iterates `z_l = Σ_{n≥m} ϖ^{n-m}[ȳ_{l,n}/x̄_m]`, `y_{l+1} = y_l - z_l·x`
/// until `y_l = 0`, `deg(y_l) < m`, or `λ_r(y_l)` has dropped by the
/// certified gap (capped at `stop`). Terms reaching `stop` are discarded.
pub fn divide_step(
    y: &WittSeries,
    x: &WittSeries,
    r: Rational,
    stop: Rational,
    cfg: &DivisionConfig<'_>,
) -> Result<StepResult> {
    check_inputs(y, x)?;
    let (y, x) = (y.exact_part(), x.exact_part());
    let m = finite_degree(&x, r)?;
    let ex = finite(lambda(&x, r));
    let gap = eps_gap(&x, r, m);
    let field = x.field();
    let mut out = StepResult {
        quotient: WittSeries::zero(field),
        remainder: y.clone(),
        eps_gap: gap,
        residual: NormExponent::Infinity,
        n_trace: Vec::new(),
    };
    let NormExponent::Finite(ey) = lambda(&y, r) else {
        return Ok(out);
    };
    let threshold = match gap {
        NormExponent::Finite(g) => (ey + g).min(stop),
        NormExponent::Infinity => stop,
    };
    let xm = x.coeff(m).expect("degree coefficient is stored");
    let rel = ((threshold - ey) / r).max(Rational::zero()) + Rational::one();
    let c = xm.inverse_approximant(rel)?;
    let mut cur = y;
    loop {
        cfg.check_cancel()?;
        let NormExponent::Finite(e) = lambda(&cur, r) else {
            break;
        };
        if e >= threshold || finite_degree(&cur, r)? < m {
            break;
        }
        let big = cur
            .points()
            .into_iter()
            .filter(|&(n, v)| Rational::from_integer(n) + r * v < threshold)
            .map(|(n, _)| n)
            .max()
            .expect("a term below the threshold exists");
        if out.n_trace.last().is_some_and(|&prev| big >= prev) {
            return Err(Error::PrecisionExhausted("division step failed to make progress"));
        }
        out.n_trace.push(big);
        let zl = shifted_top(&cur, m, &c, r, stop - ex);
        let (prod, lost) = zl.mul_lambda(&x, r, stop);
        let (next, dropped) = cur.sub(&prod).chop_lambda(r, stop);
        out.residual = out.residual.min(dropped).min(lost);
        out.quotient = out.quotient.add(&zl);
        cur = next;
    }
    out.remainder = cur;
    Ok(out)
}

/// Division with remainder in `A^r`: `y = z·x + w` with `λ_r(w) ≤ λ_r(y)`
/// and `deg(w) < deg(x)`, up to terms of `λ_r`-exponent at least `stop`.
///
/// `stop = None` selects [`DivisionConfig::default_stop`].
pub fn divide(
    y: &WittSeries,
    x: &WittSeries,
    r: Rational,
    stop: Option<Rational>,
    cfg: &DivisionConfig<'_>,
) -> Result<DivisionResult> {
    check_inputs(y, x)?;
    if !r.is_positive() {
        return Err(Error::BadInterval("radius must be positive"));
    }
    if !y.gauss_norm_exponent(r).reliable {
        return Err(Error::PrecisionExhausted("dividend norm not determined at this precision"));
    }
    degree(x, r)?;
    let stop = stop.unwrap_or_else(|| cfg.default_stop(&[y, x], r));
    let (ye, xe) = (y.exact_part(), x.exact_part());
    let m = finite_degree(&xe, r)?;
    let ex = finite(lambda(&xe, r));
    let field = xe.field();
    let mut z = WittSeries::zero(field);
    let mut cur = ye;
    let mut residual = NormExponent::Infinity;
    let mut rounds = Vec::new();
    let mut status = DivisionStatus::PrecisionExhausted;
    for _ in 0..cfg.max_rounds {
        cfg.check_cancel()?;
        let before = lambda(&cur, r);
        let NormExponent::Finite(e) = before else {
            status = DivisionStatus::Exact;
            break;
        };
        if e >= stop {
            residual = residual.min(before);
            cur = WittSeries::zero(field);
            status = DivisionStatus::Exact;
            break;
        }
        if finite_degree(&cur, r)? < m {
            status = DivisionStatus::Exact;
            break;
        }
        let step = divide_step(&cur, &xe, r, stop, cfg)?;
        residual = residual.min(step.residual);
        z = z.add(&step.quotient);
        cur = step.remainder;
        rounds.push(RoundInfo { before, after: lambda(&cur, r), eps_gap: step.eps_gap, n_trace: step.n_trace });
    }
    let (z, dropped) = z.chop_lambda(r, stop - ex);
    residual = residual.min(dropped + ex);
    if !y.is_exact() || !x.is_exact() {
        let hidden = y.hidden_exponent(r).min(lambda(&z, r) + x.hidden_exponent(r));
        residual = residual.min(hidden);
    }
    if status == DivisionStatus::Exact && residual != NormExponent::Infinity {
        status = DivisionStatus::Converged;
    }
    Ok(DivisionResult { quotient: z, remainder: cur, residual_exponent: residual, status, stop, rounds })
}

/// `[c]` with `c` approximating `1/x̄` to the relative precision needed
/// for exponents below `headroom` above the norm.
fn scale_by_inverse(lead: &HahnSeries, r: Rational, headroom: Rational) -> Result<WittSeries> {
    let rel = (headroom / r).max(Rational::zero()) + Rational::one();
    Ok(WittSeries::teichmuller(lead.inverse_approximant(rel)?))
}

/// `g = gcd(x, y)` together with `a, b` such that `a·x + b·y = g` up to the
/// reported residual. For exact inputs `g` also divides `x` and `y` with
/// zero remainder at `stop`.
///
/// `g` is normalized so that its degree-attaining coefficient is `1`; a
/// gcd of degree 0 is a unit and is normalized to `1` itself.
pub fn gcd_bezout(
    x: &WittSeries,
    y: &WittSeries,
    r: Rational,
    stop: Option<Rational>,
    cfg: &DivisionConfig<'_>,
) -> Result<GcdResult> {
    if x.is_zero() && y.is_zero() {
        return Err(Error::ZeroInput);
    }
    x.check_integral()?;
    y.check_integral()?;
    let stop = stop.unwrap_or_else(|| cfg.default_stop(&[x, y], r));
    let (xe, ye) = (x.exact_part(), y.exact_part());
    let mut internal = stop;
    for _ in 0..cfg.retries.max(1) {
        let res = euclid(&xe, &ye, r, internal, cfg)?;
        let mut residual = lambda(&res.a.mul(&xe).add(&res.b.mul(&ye)).sub(&res.g), r);
        let exact = x.is_exact() && y.is_exact();
        if !exact {
            let hidden = (lambda(&res.a, r) + x.hidden_exponent(r)).min(lambda(&res.b, r) + y.hidden_exponent(r));
            residual = residual.min(hidden);
        }
        // inexact inputs cap what any retry could certify
        if !exact {
            return Ok(GcdResult { residual_exponent: residual, stop, ..res });
        }
        let shortfall = residual.min(division_shortfall(&[&xe, &ye], &res.g, r, stop, cfg)?);
        if shortfall >= stop {
            return Ok(GcdResult { residual_exponent: residual, stop, ..res });
        }
        internal = internal + (stop - finite(shortfall)) + Rational::one();
    }
    Err(Error::PrecisionExhausted("gcd residual did not reach the stop exponent"))
}

/// Least `λ_r`-exponent of a remainder left when dividing the inputs by
/// `g`; `∞` when `g` divides both up to `stop`.
fn division_shortfall(
    inputs: &[&WittSeries],
    g: &WittSeries,
    r: Rational,
    stop: Rational,
    cfg: &DivisionConfig<'_>,
) -> Result<NormExponent> {
    let mut worst = NormExponent::Infinity;
    for v in inputs.iter().filter(|v| !v.is_zero()) {
        let d = divide(v, g, r, Some(stop), cfg)?;
        if d.status == DivisionStatus::PrecisionExhausted {
            return Err(Error::PrecisionExhausted("gcd does not divide its inputs"));
        }
        worst = worst.min(lambda(&d.remainder, r));
    }
    Ok(worst)
}

fn euclid(x: &WittSeries, y: &WittSeries, r: Rational, stop: Rational, cfg: &DivisionConfig<'_>) -> Result<GcdResult> {
    let field = x.field();
    let one = WittSeries::one(field);
    let zero = WittSeries::zero(field);
    let (mut r0, mut s0, mut t0) = (x.clone(), one.clone(), zero.clone());
    let (mut r1, mut s1, mut t1) = (y.clone(), zero.clone(), one.clone());
    let ex = lambda(x, r);
    let ey = lambda(y, r);
    let chop = |v: WittSeries, e: NormExponent| match e {
        NormExponent::Finite(e) => v.chop_lambda(r, stop - e).0,
        NormExponent::Infinity => v,
    };
    // `s0 - q·s1`, dropping what `chop` would drop anyway
    let step = |s0: &WittSeries, q: &WittSeries, s1: &WittSeries, e: NormExponent| match e {
        NormExponent::Finite(e) => chop(s0.sub(&q.mul_lambda(s1, r, stop - e).0), NormExponent::Finite(e)),
        NormExponent::Infinity => s0.sub(&q.mul(s1)),
    };
    let mut rounds = 0;
    let mut last_deg = Degree::Finite(i64::MAX);
    // `λ_r`-exponents below which `r0`, `r1` agree with the exact remainder
    // sequence; quotients of negative norm erode them
    let (mut p0, mut p1) = (NormExponent::Infinity, NormExponent::Infinity);
    while !r1.is_zero() {
        cfg.check_cancel()?;
        let d1 = degree(&r1, r)?;
        if d1 >= last_deg {
            return Err(Error::PrecisionExhausted("remainder degrees failed to decrease"));
        }
        last_deg = d1;
        if d1 == Degree::Finite(0) {
            // a unit: it generates the ideal on its own
            (r0, s0, t0) = (r1, s1, t1);
            break;
        }
        let div = divide(&r0, &r1, r, Some(stop), cfg)?;
        if div.status == DivisionStatus::PrecisionExhausted {
            return Err(Error::PrecisionExhausted("division inside the Euclidean algorithm did not finish"));
        }
        let q = div.quotient;
        let p2 = p0.min(lambda(&q, r) + p1).min(div.residual_exponent);
        let r2 = match p2 {
            NormExponent::Finite(e) => div.remainder.chop_lambda(r, e).0,
            NormExponent::Infinity => div.remainder,
        };
        let s2 = step(&s0, &q, &s1, ex);
        let t2 = step(&t0, &q, &t1, ey);
        (r0, s0, t0, p0) = (r1, s1, t1, p1);
        (r1, s1, t1, p1) = (r2, s2, t2, p2);
        rounds += 1;
    }
    let (mut g, mut a, mut b) = (r0, s0, t0);
    let m = degree(&g, r)?.finite().expect("gcd is nonzero");
    let eg = finite(lambda(&g, r));
    if m == 0 {
        let interval = Interval::point(r)?;
        let inv = invert_unit(&g, &interval, stop - eg, cfg)?.value;
        a = step(&zero, &inv, &a, ex).neg();
        b = step(&zero, &inv, &b, ey).neg();
        g = one;
    } else {
        let lead = g.coeff(m).expect("degree coefficient is stored").clone();
        if !lead.is_one() {
            let c = scale_by_inverse(&lead, r, stop - eg)?;
            g = g.mul_lambda(&c, r, stop).0;
            a = step(&zero, &c, &a, ex).neg();
            b = step(&zero, &c, &b, ey).neg();
        }
    }
    let a = chop(a, ex);
    let b = chop(b, ey);
    Ok(GcdResult { g, a, b, residual_exponent: NormExponent::Infinity, stop, rounds })
}

/// Inverse of a unit of `B^I`, accurate to `λ_I(x·y - 1) ≤ p^{-target}`.
///
/// `x` is a unit exactly when a single degree `n₀` attains `λ_t(x)` for
/// every `t ∈ I`; then `x = ϖ^{n₀}[x̄_{n₀}](1 + u)` with `λ_I(u) < 1` and
/// the inverse is a geometric series.
pub fn invert_unit(
    x: &WittSeries,
    interval: &Interval,
    target: Rational,
    cfg: &DivisionConfig<'_>,
) -> Result<UnitInverse> {
    if x.is_zero() {
        return Err(Error::ZeroInput);
    }
    let lo = x.minimizers(interval.s())?;
    let hi = x.minimizers(interval.r())?;
    let n0 = match (lo.as_slice(), hi.as_slice()) {
        ([a], [b]) if a == b => *a,
        _ => return Err(Error::NotAUnit),
    };
    let xe = x.exact_part();
    let field = xe.field();
    let one = WittSeries::one(field);
    let lead = xe.coeff(n0).expect("dominant coefficient is stored");
    let mut internal = target;
    for _ in 0..cfg.retries.max(1) {
        cfg.check_cancel()?;
        let rel = (internal / interval.s()).max(Rational::zero()) + Rational::one();
        let d = WittSeries::monomial(-n0, lead.inverse_approximant(rel)?);
        let u = xe.mul(&d).sub(&one);
        let value = match u.interval_norm_exponent(interval).exponent {
            NormExponent::Infinity => d,
            NormExponent::Finite(delta) => {
                if !delta.is_positive() {
                    return Err(Error::PrecisionExhausted("dominant term does not dominate after scaling"));
                }
                // 1/(1 - w) = Π_j (1 + w^{p^j} + ... + w^{(p-1)p^j}), and
                // `w ↦ w^p` is additive
                let mut wj = u.neg().chop_interval(interval, internal).0;
                let mut sum = one.clone();
                while !wj.is_zero() {
                    cfg.check_cancel()?;
                    let mut factor = one.clone();
                    let mut power = one.clone();
                    for _ in 1..field.p() {
                        power = power.mul_interval(&wj, interval, internal).0;
                        factor = factor.add(&power);
                    }
                    sum = sum.mul_interval(&factor, interval, internal).0;
                    wj = wj.pow_p(1)?.chop_interval(interval, internal).0;
                }
                d.mul(&sum)
            }
        };
        let mut residual = xe.mul(&value).sub(&one).interval_norm_exponent(interval).exponent;
        if !x.is_exact() {
            let hidden = x.hidden_exponent(interval.s()).min(x.hidden_exponent(interval.r()));
            residual = residual.min(hidden + value.interval_norm_exponent(interval).exponent);
            if residual < target {
                return Err(Error::PrecisionExhausted("input precision cannot support the target"));
            }
        }
        if residual >= target {
            return Ok(UnitInverse { value, residual_exponent: residual });
        }
        internal = internal + (target - finite(residual)) + Rational::one();
    }
    Err(Error::PrecisionExhausted("unit inverse did not reach the target"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hahn::BaseField;
    use crate::witt::PiTail;

    fn k2() -> BaseField {
        BaseField::prime(2).unwrap()
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn tp(e: Rational) -> HahnSeries {
        HahnSeries::t_pow(k2(), e).unwrap()
    }

    fn teich(e: i64) -> WittSeries {
        WittSeries::teichmuller(tp(q(e, 1)))
    }

    fn pi(n: i64) -> WittSeries {
        WittSeries::pi_pow(k2(), n)
    }

    fn cfg() -> DivisionConfig<'static> {
        DivisionConfig::default()
    }

    fn check_division(y: &WittSeries, x: &WittSeries, r: Rational, d: &DivisionResult) {
        let rec = y.sub(&d.quotient.mul(x)).sub(&d.remainder);
        assert!(lambda(&rec, r) >= d.residual_exponent, "reconstruction {rec}");
        assert!(lambda(&d.remainder, r) >= lambda(y, r));
        assert!(degree(&d.remainder, r).unwrap() < degree(x, r).unwrap());
    }

    #[test]
    fn worked_division() {
        let y = pi(2);
        let x = pi(1).add(&teich(1));
        let d = divide(&y, &x, q(1, 1), None, &cfg()).unwrap();
        assert_eq!(d.quotient, x);
        assert_eq!(d.remainder, teich(2));
        assert_eq!(d.status, DivisionStatus::Exact);
        let s = divide_step(&y, &x, q(1, 1), q(32, 1), &cfg()).unwrap();
        assert_eq!(s.quotient, x);
        assert_eq!(s.remainder, teich(2));
        assert_eq!(s.eps_gap, NormExponent::Infinity);
    }

    #[test]
    fn divide_by_pi() {
        let y = pi(3).add(&pi(1).mul(&teich(2))).add(&teich(5));
        let s = divide_step(&y, &pi(1), q(1, 1), q(32, 1), &cfg()).unwrap();
        assert_eq!(s.quotient, pi(2).add(&teich(2)));
        assert_eq!(s.remainder, teich(5));
    }

    #[test]
    fn zero_dividend_and_divisor() {
        let x = pi(1).add(&teich(1));
        let s = divide_step(&WittSeries::zero(k2()), &x, q(1, 1), q(8, 1), &cfg()).unwrap();
        assert!(s.quotient.is_zero() && s.remainder.is_zero());
        assert_eq!(divide(&x, &WittSeries::zero(k2()), q(1, 1), None, &cfg()), Err(Error::ZeroDivisor));
    }

    #[test]
    fn self_division_is_one() {
        let field = k2();
        let lead = tp(q(0, 1)).add(&tp(q(1, 2)));
        let x = pi(2).mul(&WittSeries::teichmuller(lead)).add(&teich(3));
        let d = divide(&x, &x, q(1, 1), None, &cfg()).unwrap();
        assert!(d.quotient.is_one(), "quotient {}", d.quotient);
        assert!(d.remainder.is_zero());
        assert_eq!(WittSeries::one(field), d.quotient);
    }

    #[test]
    fn unit_divisor_leaves_no_remainder() {
        // [1] + ϖ[t^{-1/2}] has degree 0 at r = 1/4: exponents 0 and 1 - 1/8
        let u = WittSeries::one(k2()).add(&WittSeries::monomial(1, tp(q(-1, 2))));
        let y = pi(3).add(&teich(1));
        let r = q(1, 4);
        let d = divide(&y, &u, r, None, &cfg()).unwrap();
        assert!(d.remainder.is_zero());
        check_division(&y, &u, r, &d);
        assert!(d.residual_exponent >= d.stop);
        for round in &d.rounds {
            assert!(round.after >= round.before + round.eps_gap.min(NormExponent::Finite(d.stop - finite(round.before))));
        }
    }

    #[test]
    fn non_monomial_leading_coefficient() {
        let lead = tp(q(0, 1)).add(&tp(q(1, 1)));
        let x = pi(1).mul(&WittSeries::teichmuller(lead)).add(&teich(2));
        let y = pi(4).add(&pi(2).mul(&teich(1))).add(&teich(5));
        let r = q(1, 1);
        let d = divide(&y, &x, r, None, &cfg()).unwrap();
        assert_eq!(d.status, DivisionStatus::Converged);
        check_division(&y, &x, r, &d);
        assert!(d.residual_exponent >= d.stop);
    }

    #[test]
    fn inexact_dividend_reports_its_precision() {
        let y = pi(2).add(&WittSeries::from_coeffs(k2(), [], Some(PiTail::new(5))));
        let x = pi(1).add(&teich(1));
        let d = divide(&y, &x, q(1, 1), None, &cfg()).unwrap();
        assert_eq!(d.stop, q(5, 1));
        assert_eq!(d.residual_exponent, NormExponent::int(5));
    }

    #[test]
    fn gcd_examples() {
        let r = q(1, 1);
        let a = pi(1).add(&teich(1));
        let b = pi(1).add(&teich(2));
        let c = pi(1).add(&teich(4));
        let g = gcd_bezout(&a.mul(&b), &a.mul(&c), r, None, &cfg()).unwrap();
        assert_eq!(degree(&g.g, r).unwrap(), Degree::Finite(1));
        assert!(g.residual_exponent >= g.stop);
        for v in [a.mul(&b), a.mul(&c)] {
            let d = divide(&v, &g.g, r, None, &cfg()).unwrap();
            assert!(d.remainder.is_zero());
        }
        let one = WittSeries::one(k2());
        assert!(gcd_bezout(&a, &one, r, None, &cfg()).unwrap().g.is_one());
        let self_gcd = gcd_bezout(&a, &a, r, None, &cfg()).unwrap();
        assert_eq!(self_gcd.g, a);
    }

    #[test]
    fn unit_inverses() {
        let i = Interval::new(q(2, 1), q(3, 1)).unwrap();
        let inv = invert_unit(&pi(1), &i, q(10, 1), &cfg()).unwrap();
        assert_eq!(inv.value, pi(-1));
        let inv = invert_unit(&teich(1), &i, q(10, 1), &cfg()).unwrap();
        assert_eq!(inv.value, WittSeries::teichmuller(tp(q(-1, 1))));

        let x = pi(1).add(&teich(1));
        let inv = invert_unit(&x, &i, q(10, 1), &cfg()).unwrap();
        assert!(inv.residual_exponent >= NormExponent::int(10));
        // ϖ^{-1} Σ_{k<10} ([t]ϖ^{-1})^k in characteristic 2
        let expected = WittSeries::from_coeffs(k2(), (0..10).map(|k| (-1 - k, tp(q(k, 1)))), None);
        assert_eq!(inv.value, expected);

        let not_unit = Interval::new(q(1, 2), q(2, 1)).unwrap();
        assert_eq!(invert_unit(&x, &not_unit, q(10, 1), &cfg()), Err(Error::NotAUnit));
        assert_eq!(invert_unit(&WittSeries::zero(k2()), &i, q(1, 1), &cfg()), Err(Error::ZeroInput));
    }

    #[test]
    fn cancellation() {
        let flag = AtomicBool::new(true);
        let c = DivisionConfig { cancel: Some(&flag), ..DivisionConfig::default() };
        let x = pi(1).add(&teich(1));
        assert_eq!(divide(&pi(3), &x, q(1, 1), None, &c), Err(Error::Cancelled));
    }
}
