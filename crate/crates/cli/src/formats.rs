//! JSON documents read by the CLI, and the SVG polygon plot.

use std::fmt::Write as _;
use std::sync::Arc;

use robba_core::{BaseField, FactoredElement, NewtonPolygon, PrimitiveDeg1, Rational, TateContext, TateSeries, WittSeries};
use serde::{Deserialize, Serialize};

use crate::parse::{parse_hahn, parse_tate, ParseError};
use crate::print::parse_rational;

/// A rational written either as a JSON integer or as a string like `"1/2"`.
#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(untagged)]
pub enum RationalText {
    Int(i64),
    Text(String),
}

impl RationalText {
    pub fn value(&self) -> Option<Rational> {
        match self {
            RationalText::Int(n) => Some(Rational::from_integer(*n)),
            RationalText::Text(s) => parse_rational(s),
        }
    }
}

/// `{n, radii_log: [w_i], r, generators: [tate-series]}` with `ρ_i = p^{-w_i}`.
#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct GeneratorFile {
    pub n: usize,
    #[serde(default)]
    pub radii_log: Vec<RationalText>,
    pub r: Option<RationalText>,
    pub generators: Vec<String>,
}

#[derive(Debug)]
pub enum FormatError {
    Json(serde_json::Error),
    Field(&'static str),
    Parse(ParseError),
    Kernel(robba_core::Error),
}

impl From<ParseError> for FormatError {
    fn from(e: ParseError) -> Self {
        FormatError::Parse(e)
    }
}

impl From<robba_core::Error> for FormatError {
    fn from(e: robba_core::Error) -> Self {
        FormatError::Kernel(e)
    }
}

impl From<serde_json::Error> for FormatError {
    fn from(e: serde_json::Error) -> Self {
        FormatError::Json(e)
    }
}

impl GeneratorFile {
    /// Builds the algebra and the generators. `weights` and `r` replace the
    /// file's values when given.
    pub fn load(
        &self,
        field: BaseField,
        weights: Option<Vec<Rational>>,
        r: Option<Rational>,
    ) -> Result<(Arc<TateContext>, Vec<TateSeries>), FormatError> {
        let weights = match weights {
            Some(w) => w,
            None => self
                .radii_log
                .iter()
                .map(RationalText::value)
                .collect::<Option<Vec<_>>>()
                .ok_or(FormatError::Field("radii_log entries must be rationals"))?,
        };
        let mut weights = weights;
        if weights.len() > self.n {
            return Err(FormatError::Field("more radii than variables"));
        }
        weights.resize(self.n, Rational::from_integer(0));
        let r = match (r, &self.r) {
            (Some(r), _) => r,
            (None, Some(t)) => t.value().ok_or(FormatError::Field("r must be a rational"))?,
            (None, None) => Rational::from_integer(1),
        };
        let ctx = TateContext::new(field, weights, r)?;
        let gens = self.generators.iter().map(|g| parse_tate(g, &ctx)).collect::<Result<Vec<_>, _>>()?;
        if gens.is_empty() {
            return Err(FormatError::Field("no generators"));
        }
        Ok((ctx, gens))
    }
}

#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct FactorText {
    pub u_bar: String,
}

/// `{unit: hahn, pi_power: a, factors: [{u_bar: hahn}]}`.
#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct FactoredText {
    pub unit: String,
    pub pi_power: i64,
    pub factors: Vec<FactorText>,
}

impl FactoredText {
    pub fn from_element(x: &FactoredElement) -> FactoredText {
        FactoredText {
            unit: x.unit_scalar.to_string(),
            pi_power: x.pi_power,
            factors: x.factors.iter().map(|f| FactorText { u_bar: f.u_bar().to_string() }).collect(),
        }
    }

    pub fn to_element(&self, field: BaseField) -> Result<FactoredElement, FormatError> {
        let unit = parse_hahn(&self.unit, field)?;
        let factors = self
            .factors
            .iter()
            .map(|f| Ok(PrimitiveDeg1::new(parse_hahn(&f.u_bar, field)?)?))
            .collect::<Result<Vec<_>, FormatError>>()?;
        Ok(FactoredElement { unit_scalar: unit, pi_power: self.pi_power, factors })
    }
}

fn to_f64(q: Rational) -> f64 {
    *q.numer() as f64 / *q.denom() as f64
}

/// The points `(n, v(x̄_n))` and the lower hull of the polygon.
pub fn polygon_svg(x: &WittSeries, poly: &NewtonPolygon) -> String {
    let pts: Vec<(f64, f64)> = x.points().into_iter().map(|(n, v)| (n as f64, to_f64(v))).collect();
    let (w, h, m) = (480.0, 360.0, 40.0);
    let fold = |f: fn(f64, f64) -> f64, init: f64, sel: fn(&(f64, f64)) -> f64| pts.iter().map(sel).fold(init, f);
    let (x0, x1) = (fold(f64::min, f64::INFINITY, |p| p.0), fold(f64::max, f64::NEG_INFINITY, |p| p.0));
    let (y0, y1) = (fold(f64::min, f64::INFINITY, |p| p.1), fold(f64::max, f64::NEG_INFINITY, |p| p.1));
    let sx = (w - 2.0 * m) / (x1 - x0).max(1.0);
    let sy = (h - 2.0 * m) / (y1 - y0).max(1.0);
    let px = |n: f64| m + (n - x0) * sx;
    let py = |v: f64| h - m - (v - y0) * sy;
    let mut out = String::new();
    let _ = writeln!(out, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#);
    let _ = writeln!(out, r##"<rect width="100%" height="100%" fill="#fff"/>"##);
    let _ = writeln!(
        out,
        r##"<line x1="{m}" y1="{b}" x2="{r}" y2="{b}" stroke="#999"/><line x1="{m}" y1="{m}" x2="{m}" y2="{b}" stroke="#999"/>"##,
        b = h - m,
        r = w - m
    );
    for s in &poly.segments {
        let (a, b) = (s.start, s.end);
        let _ = writeln!(
            out,
            r##"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#c33" stroke-width="2"><title>slope {} x{}</title></line>"##,
            px(a.0 as f64),
            py(to_f64(a.1)),
            px(b.0 as f64),
            py(to_f64(b.1)),
            s.slope,
            s.multiplicity
        );
    }
    for (n, v) in &pts {
        let _ = writeln!(out, r##"<circle cx="{:.2}" cy="{:.2}" r="4" fill="#236"/>"##, px(*n), py(*v));
    }
    out.push_str("</svg>\n");
    out
}
