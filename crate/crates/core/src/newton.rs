//! Newton polygons and degrees.
//!
//! We work with the points `(n, v(x̄ₙ))`. A slope `t` of the polygon is a
//! value where several degrees attain `λ_t`, i.e. where `n + t·v(x̄ₙ)` has
//! more than one minimizer; its multiplicity is the spread of those
//! minimizers. This is the same data as the polygon in the
//! `(log_p|x̄ₙ|, n)`-plane, whose slopes are these `t`.

use alloc::vec::Vec;
use core::fmt;

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::exponent::Rational;
use crate::witt::{End, Interval, WittSeries};

/// Range of slopes to keep.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Window {
    /// `(0, r]`
    UpTo(Rational),
    /// `(0, ∞)`
    All,
    /// `[s, r]`
    Closed(Interval),
}

impl Window {
    pub fn contains(&self, t: Rational) -> bool {
        match self {
            Window::UpTo(r) => t.is_positive() && t <= *r,
            Window::All => t.is_positive(),
            Window::Closed(i) => i.contains(t),
        }
    }

    fn ends(&self) -> (End, End) {
        match self {
            Window::UpTo(r) => (End::ZeroPlus, End::At(*r)),
            Window::All => (End::ZeroPlus, End::Infinity),
            Window::Closed(i) => (End::At(i.s()), End::At(i.r())),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Segment {
    pub slope: Rational,
    pub multiplicity: u64,
    /// Hull vertex `(n, v)` at the low-degree end.
    pub start: (i64, Rational),
    /// Hull vertex at the high-degree end.
    pub end: (i64, Rational),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NewtonPolygon {
    pub segments: Vec<Segment>,
    pub window: Window,
}

impl NewtonPolygon {
    pub fn multiplicity(&self, t: Rational) -> u64 {
        self.segments.iter().find(|s| s.slope == t).map_or(0, |s| s.multiplicity)
    }

    pub fn total_multiplicity(&self) -> u64 {
        self.segments.iter().map(|s| s.multiplicity).sum()
    }

    /// `(slope, multiplicity)` pairs.
    pub fn slopes(&self) -> Vec<(Rational, u64)> {
        self.segments.iter().map(|s| (s.slope, s.multiplicity)).collect()
    }
}

/// `deg`, with `deg(0) = -∞`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(i64),
}

impl Degree {
    pub fn finite(self) -> Option<i64> {
        match self {
            Degree::Finite(n) => Some(n),
            Degree::NegInfinity => None,
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::Finite(n) => write!(f, "{n}"),
            Degree::NegInfinity => f.write_str("-inf"),
        }
    }
}

/// Lower convex hull of the known points, as segments with positive slope
/// `t`, ascending in `t`.
pub(crate) fn hull(points: &[(i64, Rational)]) -> Vec<Segment> {
    let mut out = Vec::new();
    let Some(&first) = points.first() else {
        return out;
    };
    let mut cur = first;
    loop {
        let mut best: Option<(Rational, (i64, Rational))> = None;
        for &(n, v) in points.iter().filter(|&&(n, v)| n > cur.0 && v < cur.1) {
            let t = Rational::from_integer(n - cur.0) / (cur.1 - v);
            best = match best {
                Some((bt, bp)) if bt < t || (bt == t && bp.0 > n) => Some((bt, bp)),
                _ => Some((t, (n, v))),
            };
        }
        let Some((t, next)) = best else {
            return out;
        };
        out.push(Segment { slope: t, multiplicity: (next.0 - cur.0) as u64, start: cur, end: next });
        cur = next;
    }
}

/// The Newton polygon of `x` with slopes restricted to `window`.
pub fn polygon(x: &WittSeries, window: Window) -> Result<NewtonPolygon> {
    if x.is_zero() {
        return Err(Error::ZeroInput);
    }
    let (lo, hi) = window.ends();
    if !x.dominates_hidden(lo, hi, true) {
        return Err(Error::PrecisionExhausted("Newton polygon not determined at this precision"));
    }
    let segments = hull(&x.points()).into_iter().filter(|s| window.contains(s.slope)).collect();
    Ok(NewtonPolygon { segments, window })
}

/// Multiplicity of the slope `t` (0 when `t` is not a slope or lies outside
/// the window).
pub fn multiplicity(x: &WittSeries, t: Rational, window: Window) -> Result<u64> {
    Ok(polygon(x, window)?.multiplicity(t))
}

/// Largest `n` attaining `λ_r(x)`.
pub fn degree(x: &WittSeries, r: Rational) -> Result<Degree> {
    if x.is_zero() {
        return Ok(Degree::NegInfinity);
    }
    let mins = x.minimizers(r)?;
    mins.last().map(|&n| Degree::Finite(n)).ok_or(Error::PrecisionExhausted("no known term"))
}

/// Degree over `[s, r]`: the total multiplicity of slopes in the interval.
pub fn interval_degree(x: &WittSeries, interval: &Interval) -> Result<Degree> {
    if x.is_zero() {
        return Ok(Degree::NegInfinity);
    }
    let hi = x.minimizers(interval.r())?;
    let lo = x.minimizers(interval.s())?;
    match (lo.first(), hi.last()) {
        (Some(a), Some(b)) => Ok(Degree::Finite(b - a)),
        _ => Err(Error::PrecisionExhausted("no known term")),
    }
}

/// `ϖ`-adic valuation plus the multiplicities of all slopes in `(0, r]`.
pub fn degree_from_polygon(x: &WittSeries, r: Rational) -> Result<Degree> {
    if x.is_zero() {
        return Ok(Degree::NegInfinity);
    }
    let poly = polygon(x, Window::UpTo(r))?;
    let v = x.n_min().ok_or(Error::PrecisionExhausted("no known term"))?;
    Ok(Degree::Finite(v + poly.total_multiplicity() as i64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hahn::{BaseField, HahnSeries};
    use crate::witt::PiTail;

    fn k2() -> BaseField {
        BaseField::prime(2).unwrap()
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn teich(e: Rational) -> WittSeries {
        WittSeries::teichmuller(HahnSeries::t_pow(k2(), e).unwrap())
    }

    fn pi(n: i64) -> WittSeries {
        WittSeries::pi_pow(k2(), n)
    }

    #[test]
    fn linear_polygon() {
        let x = pi(1).sub(&teich(q(1, 1)));
        assert_eq!(polygon(&x, Window::All).unwrap().slopes(), [(q(1, 1), 1)]);
        assert_eq!(multiplicity(&x, q(1, 1), Window::All).unwrap(), 1);
        assert_eq!(multiplicity(&x, q(2, 1), Window::All).unwrap(), 0);
        let w = Window::Closed(Interval::new(q(2, 1), q(3, 1)).unwrap());
        assert!(polygon(&x, w).unwrap().segments.is_empty());
    }

    #[test]
    fn double_root_polygon() {
        // ϖ² + [t] = (ϖ + [t^{1/2}])²: both degrees attain λ_t at t = 2
        let x = pi(2).add(&teich(q(1, 1)));
        assert_eq!(polygon(&x, Window::All).unwrap().slopes(), [(q(2, 1), 2)]);
    }

    #[test]
    fn degrees() {
        let x = pi(1).sub(&teich(q(1, 1)));
        assert_eq!(degree(&x, q(2, 1)).unwrap(), Degree::Finite(1));
        assert_eq!(degree(&x, q(1, 2)).unwrap(), Degree::Finite(0));
        assert_eq!(degree(&WittSeries::zero(k2()), q(1, 1)).unwrap(), Degree::NegInfinity);
        assert_eq!(degree_from_polygon(&x, q(2, 1)).unwrap(), Degree::Finite(1));
        let i = Interval::new(q(1, 2), q(2, 1)).unwrap();
        assert_eq!(interval_degree(&x, &i).unwrap(), Degree::Finite(1));
        let j = Interval::new(q(2, 1), q(3, 1)).unwrap();
        assert_eq!(interval_degree(&x, &j).unwrap(), Degree::Finite(0));
    }

    #[test]
    fn collinear_points_merge() {
        // points (0,2), (1,1), (2,0) on one line of slope 1
        let x = pi(2).add(&pi(1).mul(&teich(q(1, 1)))).add(&teich(q(2, 1)));
        assert_eq!(polygon(&x, Window::All).unwrap().slopes(), [(q(1, 1), 2)]);
    }

    #[test]
    fn window_cuts() {
        // slopes 1/2 (from ϖ - [t^2]) and 1 (from ϖ - [t])
        let x = pi(1).sub(&teich(q(2, 1))).mul(&pi(1).sub(&teich(q(1, 1))));
        let all = polygon(&x, Window::All).unwrap();
        assert_eq!(all.slopes(), [(q(1, 2), 1), (q(1, 1), 1)]);
        assert_eq!(polygon(&x, Window::UpTo(q(3, 4))).unwrap().slopes(), [(q(1, 2), 1)]);
    }

    #[test]
    fn precision_blocks_polygon() {
        let x = pi(1).sub(&teich(q(1, 1))).add(&WittSeries::from_coeffs(k2(), [], Some(PiTail::new(2))));
        assert!(polygon(&x, Window::UpTo(q(1, 1))).is_ok());
        assert!(polygon(&x, Window::UpTo(q(2, 1))).is_ok());
        let y = teich(q(1, 1)).add(&WittSeries::from_coeffs(k2(), [], Some(PiTail::new(1))));
        assert!(matches!(polygon(&y, Window::UpTo(q(1, 1))), Err(Error::PrecisionExhausted(_))));
        assert_eq!(polygon(&WittSeries::zero(k2()), Window::All), Err(Error::ZeroInput));
    }
}
