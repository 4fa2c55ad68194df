//! Session settings: flags, then `ROBBA_*` variables, then a `key = value`
//! file, then defaults.

use std::collections::BTreeMap;

use num_traits::Signed;
use robba_core::{BaseField, Error, Fq, Interval, NormExponent, Rational};

use crate::print::{parse_exponent, parse_rational};

pub const KEYS: &[&str] =
    &["p", "q_degree", "r", "s", "rho", "prec_t", "prec_pi", "den_cap", "stop_exponent", "jobs"];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SessionConfig {
    pub p: u32,
    /// `q = p^f`.
    pub f: u32,
    /// Exponent denominators are capped at `p^den_cap`.
    pub den_cap: u32,
    pub r: Option<Rational>,
    pub s: Option<Rational>,
    /// Radii `ρ = p^{-e}` given by `e`; Tate weights or homotopy radii.
    pub rho: Vec<NormExponent>,
    /// `t`-adic precision for root expansions.
    pub prec_t: Rational,
    /// `ϖ`-precision assumed for exact inputs.
    pub prec_pi: i64,
    pub stop: Option<Rational>,
    pub jobs: usize,
}

impl Default for SessionConfig {
    fn default() -> Self {
        SessionConfig {
            p: 2,
            f: 1,
            den_cap: 8,
            r: None,
            s: None,
            rho: Vec::new(),
            prec_t: Rational::from_integer(32),
            prec_pi: 16,
            stop: None,
            jobs: 4,
        }
    }
}

/// Reads `key = value` lines; `#` starts a comment.
pub fn parse_file(text: &str) -> Result<BTreeMap<String, String>, String> {
    let mut out = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((k, v)) = line.split_once('=') else {
            return Err(format!("config line {}: expected key = value", i + 1));
        };
        let k = k.trim().replace('-', "_");
        if !KEYS.contains(&k.as_str()) {
            return Err(format!("config line {}: unknown key '{k}'", i + 1));
        }
        out.insert(k, v.trim().to_string());
    }
    Ok(out)
}

fn num<T: std::str::FromStr>(key: &str, v: &str) -> Result<T, String> {
    v.trim().parse().map_err(|_| format!("{key}: cannot read '{v}'"))
}

fn rat(key: &str, v: &str) -> Result<Rational, String> {
    parse_rational(v).ok_or_else(|| format!("{key}: expected a rational, got '{v}'"))
}

impl SessionConfig {
    /// Applies `settings` (already merged by precedence) over the defaults.
    pub fn from_settings(settings: &BTreeMap<String, String>) -> Result<SessionConfig, String> {
        let mut c = SessionConfig::default();
        for (k, v) in settings {
            match k.as_str() {
                "p" => c.p = num(k, v)?,
                "q_degree" => c.f = num(k, v)?,
                "den_cap" => c.den_cap = num(k, v)?,
                "r" => c.r = Some(rat(k, v)?),
                "s" => c.s = Some(rat(k, v)?),
                "rho" => {
                    c.rho = v
                        .split(',')
                        .filter(|x| !x.trim().is_empty())
                        .map(|x| parse_exponent(x).ok_or_else(|| format!("rho: cannot read '{x}'")))
                        .collect::<Result<_, _>>()?
                }
                "prec_t" => c.prec_t = rat(k, v)?,
                "prec_pi" => c.prec_pi = num(k, v)?,
                "stop_exponent" => c.stop = Some(rat(k, v)?),
                "jobs" => c.jobs = num::<usize>(k, v)?.max(1),
                _ => return Err(format!("unknown setting '{k}'")),
            }
        }
        if c.den_cap == 0 || c.prec_pi <= 0 || !c.prec_t.is_positive() {
            return Err("precision caps must be positive".into());
        }
        Ok(c)
    }

    pub fn field(&self) -> Result<BaseField, Error> {
        Ok(BaseField::new(Fq::new(self.p, self.f)?, self.den_cap))
    }

    /// The base radius `r`, default 1.
    pub fn radius(&self) -> Rational {
        self.r.unwrap_or_else(|| Rational::from_integer(1))
    }

    /// `[s, r]` with `s` defaulting to `r`.
    pub fn interval(&self) -> Result<Interval, Error> {
        let r = self.radius();
        Interval::new(self.s.unwrap_or(r), r)
    }

    /// Finite `--rho` exponents, read as Tate weights.
    pub fn weights(&self) -> Option<Vec<Rational>> {
        if self.rho.is_empty() {
            return None;
        }
        self.rho.iter().map(|e| e.finite()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_and_defaults() {
        let m = parse_file("# session\np = 3\nq-degree = 2\nrho = 0, 1/2, inf\nstop_exponent = 5/2\n").unwrap();
        let c = SessionConfig::from_settings(&m).unwrap();
        assert_eq!((c.p, c.f, c.prec_pi), (3, 2, 16));
        assert_eq!(c.rho, vec![NormExponent::int(0), NormExponent::Finite(Rational::new(1, 2)), NormExponent::Infinity]);
        assert_eq!(c.stop, Some(Rational::new(5, 2)));
        assert_eq!(c.field().unwrap().fq().order(), 9);
        assert_eq!(c.weights(), None);
    }

    #[test]
    fn bad_lines() {
        assert!(parse_file("p 3").is_err());
        assert!(parse_file("colour = red").is_err());
        let m = parse_file("prec_pi = 0").unwrap();
        assert!(SessionConfig::from_settings(&m).is_err());
    }
}
