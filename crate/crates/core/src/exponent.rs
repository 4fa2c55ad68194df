//! Exact exponents of norms.

use core::cmp::Ordering;
use core::fmt;
use core::ops::Add;

use num_traits::{Signed, Zero};

pub type Rational = num_rational::Ratio<i64>;

/// Exponent `e` of a norm `p^{-e}`, or `+∞` for the zero norm.
///
/// Larger exponents mean smaller norms. The same type doubles as a
/// precision cap (`+∞` = exactly known).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NormExponent {
    Finite(Rational),
    Infinity,
}

impl NormExponent {
    pub const INFINITY: NormExponent = NormExponent::Infinity;

    pub fn int(n: i64) -> Self {
        NormExponent::Finite(Rational::from_integer(n))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, NormExponent::Infinity)
    }

    pub fn finite(&self) -> Option<Rational> {
        match self {
            NormExponent::Finite(q) => Some(*q),
            NormExponent::Infinity => None,
        }
    }

    /// `self - other`; `∞ - finite = ∞`. Panics on `∞ - ∞`.
    pub fn minus(&self, other: Rational) -> NormExponent {
        match self {
            NormExponent::Finite(q) => NormExponent::Finite(q - other),
            NormExponent::Infinity => NormExponent::Infinity,
        }
    }

    pub fn scale(&self, c: Rational) -> NormExponent {
        debug_assert!(!c.is_negative());
        match self {
            NormExponent::Finite(q) => NormExponent::Finite(q * c),
            NormExponent::Infinity if c.is_zero() => NormExponent::Finite(Rational::zero()),
            NormExponent::Infinity => NormExponent::Infinity,
        }
    }
}

impl From<Rational> for NormExponent {
    fn from(q: Rational) -> Self {
        NormExponent::Finite(q)
    }
}

impl PartialOrd for NormExponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for NormExponent {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (NormExponent::Finite(a), NormExponent::Finite(b)) => a.cmp(b),
            (NormExponent::Finite(_), NormExponent::Infinity) => Ordering::Less,
            (NormExponent::Infinity, NormExponent::Finite(_)) => Ordering::Greater,
            (NormExponent::Infinity, NormExponent::Infinity) => Ordering::Equal,
        }
    }
}

impl Add for NormExponent {
    type Output = NormExponent;

    fn add(self, rhs: NormExponent) -> NormExponent {
        match (self, rhs) {
            (NormExponent::Finite(a), NormExponent::Finite(b)) => NormExponent::Finite(a + b),
            _ => NormExponent::Infinity,
        }
    }
}

impl Add<Rational> for NormExponent {
    type Output = NormExponent;

    fn add(self, rhs: Rational) -> NormExponent {
        self + NormExponent::Finite(rhs)
    }
}

impl PartialEq<Rational> for NormExponent {
    fn eq(&self, other: &Rational) -> bool {
        *self == NormExponent::Finite(*other)
    }
}

impl PartialOrd<Rational> for NormExponent {
    fn partial_cmp(&self, other: &Rational) -> Option<Ordering> {
        Some(self.cmp(&NormExponent::Finite(*other)))
    }
}

impl fmt::Display for NormExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormExponent::Finite(q) => write!(f, "{q}"),
            NormExponent::Infinity => f.write_str("inf"),
        }
    }
}

/// If `den = p^k` return `k`.
pub(crate) fn p_power_of(den: i64, p: u32) -> Option<u32> {
    let p = i64::from(p);
    let mut d = den;
    let mut k = 0;
    if d <= 0 {
        return None;
    }
    while d > 1 {
        if d % p != 0 {
            return None;
        }
        d /= p;
        k += 1;
    }
    Some(k)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ordering_puts_infinity_last() {
        let a = NormExponent::int(3);
        assert!(a < NormExponent::Infinity);
        assert!(NormExponent::Finite(Rational::new(5, 2)) < a);
        assert_eq!(a + NormExponent::Infinity, NormExponent::Infinity);
    }

    #[test]
    fn p_power_detection() {
        assert_eq!(p_power_of(8, 2), Some(3));
        assert_eq!(p_power_of(1, 3), Some(0));
        assert_eq!(p_power_of(6, 2), None);
        assert_eq!(p_power_of(27, 3), Some(3));
    }
}
