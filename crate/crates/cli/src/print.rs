//! Text forms that the kernel does not provide itself.

use robba_core::{NormExponent, Rational, TateSeries, WittSeries};

fn is_single_term(c: &WittSeries) -> bool {
    c.coeffs().len() == 1 && c.tail().is_none()
}

/// `Σ c_I·T^I` in the element syntax, highest index first. Only the exact
/// terms are printed; callers report precision separately.
pub fn tate_to_string(x: &TateSeries) -> String {
    let mut parts = Vec::new();
    for (index, c) in x.terms().iter().rev() {
        let part = if index.is_zero() {
            c.to_string()
        } else if c.is_one() {
            index.to_string()
        } else if is_single_term(c) {
            format!("{c}*{index}")
        } else {
            format!("({c})*{index}")
        };
        parts.push(part);
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

/// `inf` or an exact rational such as `5/2`.
pub fn exponent(e: NormExponent) -> String {
    e.to_string()
}

pub fn rational(q: Rational) -> String {
    q.to_string()
}

/// Reads `5/2`, `-3` or `inf`.
pub fn parse_exponent(s: &str) -> Option<NormExponent> {
    let s = s.trim();
    if s == "inf" {
        return Some(NormExponent::Infinity);
    }
    parse_rational(s).map(NormExponent::Finite)
}

pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim().parse::<i64>().ok()?, d.trim().parse::<i64>().ok()?),
        None => (s.parse::<i64>().ok()?, 1),
    };
    (d != 0).then(|| Rational::new(n, d))
}
