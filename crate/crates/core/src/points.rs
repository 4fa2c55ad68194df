//! Primitive elements of degree one and the points they define.
//!
//! A point is given by a center `ϖ - [ū]` together with a radius `ρ`, and
//! seminorms are only evaluated on elements in factored form
//! `[c]·ϖ^a·Π(ϖ - [ūᵢ])`, where the homotopy has a closed formula.
//! Radii `ρ = p^{-e}` are stored through `e`, with `e = ∞` for `ρ = 0`.

use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exponent::{NormExponent, Rational};
use crate::hahn::HahnSeries;
use crate::lpoly::{roots, LPoly};
use crate::newton::{polygon, Window};
use crate::witt::{Interval, WittSeries};

/// `z = ϖ - [ū]` with `ū ∈ 𝔪_L \ {0}`, of slope `1 / v(ū)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimitiveDeg1 {
    u_bar: HahnSeries,
    slope: Rational,
}

impl PrimitiveDeg1 {
    pub fn new(u_bar: HahnSeries) -> Result<PrimitiveDeg1> {
        if !u_bar.is_exact() {
            return Err(Error::PrecisionExhausted("ū must be known exactly"));
        }
        match u_bar.valuation()? {
            NormExponent::Finite(v) if v.is_positive() => Ok(PrimitiveDeg1 { u_bar, slope: v.recip() }),
            NormExponent::Infinity => Err(Error::NotPrimitive("constant term is zero")),
            _ => Err(Error::NotPrimitive("constant term is not in the maximal ideal")),
        }
    }

    pub fn u_bar(&self) -> &HahnSeries {
        &self.u_bar
    }

    /// The `r` with `λ_r(ϖ) = λ_r([ū])`.
    pub fn slope(&self) -> Rational {
        self.slope
    }

    /// `ϖ - [ū]`.
    pub fn element(&self) -> WittSeries {
        let field = self.u_bar.field();
        WittSeries::pi_pow(field, 1).sub(&WittSeries::teichmuller(self.u_bar.clone()))
    }
}

impl fmt::Display for PrimitiveDeg1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "pi - [{}]", self.u_bar)
    }
}

/// Validates `z` as primitive of degree 1 and brings it to the shape
/// `ϖ - [ū]`.
pub fn primitive_check(z: &WittSeries) -> Result<PrimitiveDeg1> {
    if z.n_min().is_some_and(|n| n < 0) {
        return Err(Error::NotPrimitive("negative powers of ϖ"));
    }
    let field = z.field();
    let (Some(z0), Some(z1)) = (z.coeff(0), z.coeff(1)) else {
        return Err(Error::NotPrimitive("missing constant or linear coefficient"));
    };
    if !z0.is_exact() || !z1.is_exact() {
        return Err(Error::PrecisionExhausted("leading coefficients are not known exactly"));
    }
    match z0.valuation()? {
        NormExponent::Finite(v) if v.is_positive() => {}
        _ => return Err(Error::NotPrimitive("constant coefficient is not in the maximal ideal")),
    }
    if z1.valuation()? != NormExponent::Finite(Rational::zero()) {
        return Err(Error::NotPrimitive("linear coefficient is not a unit"));
    }
    for x in z.coeffs().values() {
        if x.valuation_lower_bound() < Rational::zero() {
            return Err(Error::NotPrimitive("coefficient outside the valuation ring"));
        }
    }
    if z.tail().is_some() || z.coeffs().len() > 2 || !z1.is_monomial() {
        return Err(Error::NotMonicShape);
    }
    let (_, c) = z1.leading_term().expect("unit coefficient");
    let c_inv = field.fq().inv(c).expect("nonzero");
    PrimitiveDeg1::new(z0.scale(c_inv).neg())
}

/// `θ(x) = Σ x̄ₙ·ūⁿ`, the image of `x` in `B/(ϖ - [ū]) = L`.
///
/// The result carries the `t`-adic precision certified by `x`.
pub fn eval_at_primitive(x: &WittSeries, z: &PrimitiveDeg1) -> Result<HahnSeries> {
    let field = x.field();
    let u = &z.u_bar;
    let vu = z.slope.recip();
    let prec = x.hidden_exponent(z.slope).scale(vu);
    let mut out = HahnSeries::zero(field);
    for (&n, c) in x.coeffs() {
        let c = c.exact_part();
        let term = if n >= 0 {
            c.mul_truncated(&u.pow(n as u32), prec)
        } else {
            let k = n.unsigned_abs() as u32;
            let inv = if u.is_monomial() {
                u.inv(Rational::zero())?
            } else {
                let NormExponent::Finite(m) = prec else {
                    return Err(Error::PrecisionExhausted("negative powers of a non-monomial ū need finite precision"));
                };
                let cv = c.valuation()?.finite().expect("nonzero coefficient");
                let target = m - cv + Rational::from_integer(i64::from(k)) * vu;
                u.inv(crate::hahn::round_up_to_field(field, target))?
            };
            c.mul_truncated(&inv.pow(k), prec)
        };
        out = out.add(&term);
    }
    Ok(out.truncate(prec))
}

/// `β(x) = |θ(x)|^r` as an exponent: `r·v(θ(x))`.
pub fn point_seminorm(x: &WittSeries, z: &PrimitiveDeg1) -> Result<NormExponent> {
    let theta = eval_at_primitive(x, z)?;
    Ok(theta.valuation()?.scale(z.slope))
}

/// `[c]·ϖ^a·Π(ϖ - [ūᵢ])`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactoredElement {
    pub unit_scalar: HahnSeries,
    pub pi_power: i64,
    pub factors: Vec<PrimitiveDeg1>,
}

impl FactoredElement {
    pub fn expand(&self) -> WittSeries {
        let mut x = WittSeries::monomial(self.pi_power, self.unit_scalar.clone());
        for f in &self.factors {
            x = x.mul(&f.element());
        }
        x
    }
}

/// The point `H(β, ρ)` for `β` the point cut out by `center`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSpec {
    pub center: PrimitiveDeg1,
    /// `e` with `ρ = p^{-e}`; `∞` for `ρ = 0`.
    pub rho_exponent: NormExponent,
}

impl PointSpec {
    pub fn new(center: PrimitiveDeg1, rho_exponent: NormExponent) -> Result<PointSpec> {
        if rho_exponent < Rational::zero() {
            return Err(Error::BadInterval("radius must lie in [0, 1]"));
        }
        Ok(PointSpec { center, rho_exponent })
    }
}

/// Exponent of `H(β,ρ)(ϖ - [w̄]) = max{p^{-1}ρ, λ_r([ū] - [w̄])}`.
fn linear_factor_exponent(point: &PointSpec, w: &HahnSeries) -> Result<NormExponent> {
    let d = point.center.u_bar.sub(w).valuation()?.scale(point.center.slope);
    Ok(d.min(point.rho_exponent + Rational::one()))
}

/// `H(β,ρ)(x)` on a factored `x`, extended multiplicatively from linear
/// factors. Every factor must have the slope of the center.
pub fn homotopy_seminorm(x: &FactoredElement, point: &PointSpec) -> Result<NormExponent> {
    let r = point.center.slope;
    let unit = x.unit_scalar.valuation()?;
    let mut e = unit.scale(r) + Rational::from_integer(x.pi_power);
    for f in &x.factors {
        if f.slope != r {
            return Err(Error::SlopeMismatch(f.slope, r));
        }
        e = e + linear_factor_exponent(point, &f.u_bar)?;
    }
    Ok(e)
}

/// Radius exponent of `β₁ ∧ β₂`: the least `ρ` with `p^{-1}ρ ≥ λ_r([ū₁] - [ū₂])`,
/// capped at `ρ = 1`. `∞` (that is, `ρ = 0`) when the centers agree.
pub fn join_radius(z1: &PrimitiveDeg1, z2: &PrimitiveDeg1) -> Result<NormExponent> {
    if z1.slope != z2.slope {
        return Err(Error::SlopeMismatch(z1.slope, z2.slope));
    }
    let d = z1.u_bar.sub(&z2.u_bar).valuation()?.scale(z1.slope);
    Ok(match d {
        NormExponent::Finite(d) => NormExponent::Finite((d - Rational::one()).max(Rational::zero())),
        NormExponent::Infinity => NormExponent::Infinity,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FactorConfig {
    /// Root expansions stop at terms of this `t`-valuation.
    pub t_prec: Rational,
    pub max_steps: usize,
}

impl Default for FactorConfig {
    fn default() -> Self {
        FactorConfig { t_prec: Rational::from_integer(32), max_steps: 10_000 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub factored: FactoredElement,
    /// `λ_I`-exponent of `x - expand(factored)`.
    pub residual_exponent: NormExponent,
}

/// Writes a `ϖ`-polynomial with all slopes in `window` as
/// `[c]·ϖ^a·Π(ϖ - [ūᵢ])`, factors sorted by slope.
pub fn factor_primitive(x: &WittSeries, window: &Interval, cfg: &FactorConfig) -> Result<Factorization> {
    if x.is_zero() {
        return Err(Error::ZeroInput);
    }
    if x.tail().is_some() || !x.coeffs().values().all(HahnSeries::is_exact) {
        return Err(Error::NotPolynomial);
    }
    let field = x.field();
    let a = x.n_min().expect("nonzero");
    let d = x.n_max().expect("nonzero");
    let poly = polygon(x, Window::All)?;
    if poly.total_multiplicity() != (d - a) as u64 {
        return Err(Error::NotPrimitive("some root has non-positive valuation"));
    }
    if let Some(s) = poly.segments.iter().find(|s| !window.contains(s.slope)) {
        return Err(Error::SlopeOutsideWindow(s.slope));
    }
    let coeffs = (a..=d).map(|n| x.coeff(n).cloned().unwrap_or_else(|| HahnSeries::zero(field))).collect();
    let found = roots(&LPoly::new(field, coeffs), Rational::zero(), cfg.t_prec, cfg.max_steps)?;
    let mut factors = found.into_iter().map(|r| PrimitiveDeg1::new(r.value)).collect::<Result<Vec<_>>>()?;
    factors.sort_by_key(|p| p.slope);
    let factored = FactoredElement { unit_scalar: x.coeff(d).expect("top coefficient").clone(), pi_power: a, factors };
    let residual_exponent = x.sub(&factored.expand()).interval_norm_exponent(window).exponent;
    Ok(Factorization { factored, residual_exponent })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hahn::BaseField;
    use crate::newton::degree;
    use alloc::vec;

    fn k2() -> BaseField {
        BaseField::prime(2).unwrap()
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn t(e: Rational) -> HahnSeries {
        HahnSeries::t_pow(k2(), e).unwrap()
    }

    fn pi(n: i64) -> WittSeries {
        WittSeries::pi_pow(k2(), n)
    }

    fn teich(x: HahnSeries) -> WittSeries {
        WittSeries::teichmuller(x)
    }

    fn prim(e: Rational) -> PrimitiveDeg1 {
        PrimitiveDeg1::new(t(e)).unwrap()
    }

    #[test]
    fn primitive_slopes() {
        assert_eq!(primitive_check(&pi(1).sub(&teich(t(q(1, 1))))).unwrap().slope(), q(1, 1));
        assert_eq!(primitive_check(&pi(1).sub(&teich(t(q(2, 1))))).unwrap().slope(), q(1, 2));
        assert!(matches!(primitive_check(&pi(1).sub(&teich(t(q(-1, 1))))), Err(Error::NotPrimitive(_))));
        let z = pi(2).add(&pi(1)).add(&teich(t(q(1, 1))));
        assert_eq!(primitive_check(&z), Err(Error::NotMonicShape));
    }

    #[test]
    fn evaluation() {
        let z = prim(q(1, 1));
        assert_eq!(eval_at_primitive(&pi(1), &z).unwrap(), t(q(1, 1)));
        let x = pi(2).add(&teich(t(q(2, 1))));
        assert!(eval_at_primitive(&x, &z).unwrap().is_zero());
        assert_eq!(eval_at_primitive(&pi(-1), &z).unwrap(), t(q(-1, 1)));
    }

    #[test]
    fn point_seminorms() {
        let z = prim(q(1, 2));
        assert_eq!(point_seminorm(&pi(1), &z).unwrap(), NormExponent::int(1));
        assert_eq!(point_seminorm(&z.element(), &z).unwrap(), NormExponent::Infinity);
    }

    #[test]
    fn homotopy_endpoints() {
        let center = prim(q(1, 1));
        let x = FactoredElement {
            unit_scalar: t(q(1, 1)),
            pi_power: 1,
            factors: vec![prim(q(1, 1)), PrimitiveDeg1::new(t(q(1, 1)).add(&t(q(3, 1)))).unwrap()],
        };
        let at0 = PointSpec::new(center.clone(), NormExponent::Infinity).unwrap();
        let at1 = PointSpec::new(center.clone(), NormExponent::int(0)).unwrap();
        assert_eq!(homotopy_seminorm(&x, &at0).unwrap(), point_seminorm(&x.expand(), &center).unwrap());
        assert_eq!(homotopy_seminorm(&x, &at1).unwrap(), x.expand().gauss_norm_exponent(q(1, 1)).exponent);
        // a factor equal to the center contributes 1 + 2 at ρ = p^{-2}
        let only = FactoredElement { unit_scalar: HahnSeries::one(k2()), pi_power: 0, factors: vec![center.clone()] };
        let p2 = PointSpec::new(center, NormExponent::int(2)).unwrap();
        assert_eq!(homotopy_seminorm(&only, &p2).unwrap(), NormExponent::int(3));
        let bad = FactoredElement { unit_scalar: HahnSeries::one(k2()), pi_power: 0, factors: vec![prim(q(2, 1))] };
        assert_eq!(homotopy_seminorm(&bad, &p2), Err(Error::SlopeMismatch(q(1, 2), q(1, 1))));
    }

    #[test]
    fn joins() {
        let z1 = prim(q(1, 1));
        let z2 = PrimitiveDeg1::new(t(q(1, 1)).add(&t(q(3, 1)))).unwrap();
        assert_eq!(join_radius(&z1, &z1).unwrap(), NormExponent::Infinity);
        assert_eq!(join_radius(&z1, &z2).unwrap(), NormExponent::int(2));
        assert_eq!(join_radius(&z2, &z1).unwrap(), NormExponent::int(2));
        assert!(join_radius(&z1, &prim(q(2, 1))).is_err());
    }

    #[test]
    fn factor_double_root() {
        let x = pi(2).add(&teich(t(q(3, 1))));
        let w = Interval::new(q(1, 4), q(2, 1)).unwrap();
        let f = factor_primitive(&x, &w, &FactorConfig::default()).unwrap();
        assert_eq!(f.factored.factors, vec![prim(q(3, 2)), prim(q(3, 2))]);
        assert_eq!(f.residual_exponent, NormExponent::Infinity);
    }

    #[test]
    fn factor_two_slopes() {
        let x = pi(2).add(&pi(1).mul(&teich(t(q(1, 1)).add(&t(q(2, 1)))))).add(&teich(t(q(3, 1))));
        let w = Interval::new(q(1, 4), q(2, 1)).unwrap();
        let f = factor_primitive(&x, &w, &FactorConfig::default()).unwrap();
        assert_eq!(f.factored.factors, vec![prim(q(2, 1)), prim(q(1, 1))]);
        assert_eq!(f.factored.expand(), x);
        assert_eq!(degree(&x, q(3, 4)).unwrap().finite(), Some(1));
    }

    #[test]
    fn factor_trivial_and_errors() {
        let w = Interval::new(q(1, 4), q(2, 1)).unwrap();
        let z = pi(1).sub(&teich(t(q(1, 1))));
        assert_eq!(factor_primitive(&z, &w, &FactorConfig::default()).unwrap().factored.factors, vec![prim(q(1, 1))]);
        let x = pi(2).add(&pi(1).mul(&teich(t(q(1, 1))))).add(&teich(t(q(2, 1))));
        assert_eq!(factor_primitive(&x, &w, &FactorConfig::default()), Err(Error::NeedsFieldExtension));
        let narrow = Interval::new(q(2, 1), q(3, 1)).unwrap();
        assert_eq!(factor_primitive(&z, &narrow, &FactorConfig::default()), Err(Error::SlopeOutsideWindow(q(1, 1))));
    }
}
