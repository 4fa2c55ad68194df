//! Exact arithmetic for extended Robba rings over a perfect field of
//! characteristic `p`, in the model where the coefficient field `E` is
//! `F_q((ϖ))`.
//!
//! The crate is `no_std` and only needs `alloc`. Every norm is carried as a
//! rational exponent `e` standing for `p^{-e}`, so all comparisons are exact.
//!
//! Layout:
//!
//! * [`fq`] and [`hahn`]: the residue field `F_q` and the coefficient field
//!   `L` of truncated Hahn series in `t` with exponents in `Z[1/p]`.
//! * [`witt`]: series `Σ ϖⁿ[x̄ₙ]`, their Gauss norms `λ_t` and interval norms.
//! * [`newton`]: Newton polygons, slope multiplicities and degrees.
//! * [`euclidean`]: division with remainder, gcd/Bézout, unit inversion.
//! * [`tate`]: weighted Tate algebras over `A^r`, leading data and reduction.
//! * [`points`]: primitive elements of degree one, evaluation points, the
//!   homotopy seminorms and slope factorization.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod error;
pub mod euclidean;
pub mod exponent;
pub mod fq;
pub mod hahn;
pub mod newton;
pub mod points;
pub mod tate;
pub mod witt;

mod lpoly;

pub use error::{Error, Result};
pub use euclidean::{
    divide, divide_step, gcd_bezout, invert_unit, DivisionConfig, DivisionResult,
    DivisionStatus, GcdResult, StepResult, UnitInverse,
};
pub use exponent::{NormExponent, Rational};
pub use fq::{Fq, FqElement};
pub use hahn::{BaseField, HahnSeries};
pub use newton::{degree, interval_degree, multiplicity, polygon, Degree, NewtonPolygon, Segment, Window};
pub use points::{
    eval_at_primitive, factor_primitive, homotopy_seminorm, join_radius, point_seminorm, primitive_check, FactorConfig,
    FactoredElement, Factorization, PointSpec, PrimitiveDeg1,
};
pub use tate::{MultiIndex, TateContext, TateSeries};
pub use witt::{Interval, NormValue, PiTail, WittSeries};
