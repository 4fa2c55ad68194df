//! The finite field `F_q`, `q = p^f`, in a polynomial basis over `F_p`.

use core::fmt;

use crate::error::{Error, Result};

/// Largest supported extension degree `f`.
pub const MAX_DEGREE: usize = 8;

type Digits = [u64; 2 * MAX_DEGREE];

/// An element of `F_q`, encoded by its base-`p` digits: digit `i` is the
/// coefficient of `g^i`, where `g` is a root of the field's modulus.
///
/// The encoding is only meaningful together with the [`Fq`] it came from.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FqElement(u32);

impl FqElement {
    pub const ZERO: FqElement = FqElement(0);

    pub fn code(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub(crate) const fn from_raw(code: u32) -> FqElement {
        FqElement(code)
    }
}

/// Field parameters. Cheap to copy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fq {
    p: u32,
    f: u32,
    q: u32,
    /// Low coefficients of the monic modulus `x^f + Σ modulus[i] x^i`.
    modulus: [u32; MAX_DEGREE],
}

impl Fq {
    /// Builds `F_{p^f}` with the lexicographically smallest monic
    /// irreducible of degree `f` as modulus.
    pub fn new(p: u32, f: u32) -> Result<Fq> {
        if p < 2 || !is_prime(p) {
            return Err(Error::BadField("p must be prime"));
        }
        if f == 0 || f as usize > MAX_DEGREE {
            return Err(Error::BadField("extension degree must be in 1..=8"));
        }
        let q = u64::from(p).checked_pow(f).filter(|&q| q < (1 << 31));
        let Some(q) = q else {
            return Err(Error::BadField("q = p^f is too large"));
        };
        let mut field = Fq { p, f, q: q as u32, modulus: [0; MAX_DEGREE] };
        if f > 1 {
            field.modulus = smallest_irreducible(p, f);
        }
        Ok(field)
    }

    pub fn prime(p: u32) -> Result<Fq> {
        Fq::new(p, 1)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.f
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    /// Coefficients of the modulus, lowest first, including the leading 1.
    pub fn modulus(&self) -> impl Iterator<Item = u32> + '_ {
        self.modulus[..self.f as usize].iter().copied().chain(core::iter::once(1))
    }

    pub fn zero(&self) -> FqElement {
        FqElement(0)
    }

    pub fn one(&self) -> FqElement {
        FqElement(1)
    }

    /// The class of `n` in `F_p ⊂ F_q`.
    pub fn from_int(&self, n: i64) -> FqElement {
        FqElement(n.rem_euclid(i64::from(self.p)) as u32)
    }

    /// The basis generator `g`, or `None` for prime fields.
    pub fn generator(&self) -> Option<FqElement> {
        (self.f > 1).then_some(FqElement(self.p))
    }

    pub fn from_code(&self, code: u32) -> Option<FqElement> {
        (code < self.q).then_some(FqElement(code))
    }

    pub fn elements(&self) -> impl Iterator<Item = FqElement> {
        (0..self.q).map(FqElement)
    }

    pub fn digits(&self, a: FqElement) -> [u32; MAX_DEGREE] {
        let mut out = [0; MAX_DEGREE];
        let mut c = a.0;
        for d in out.iter_mut().take(self.f as usize) {
            *d = c % self.p;
            c /= self.p;
        }
        out
    }

    pub fn from_digits(&self, digits: &[i64]) -> FqElement {
        let mut wide: Digits = [0; 2 * MAX_DEGREE];
        let p = i64::from(self.p);
        for (i, d) in digits.iter().enumerate() {
            if i < wide.len() {
                wide[i] = d.rem_euclid(p) as u64;
            }
        }
        self.reduce(&mut wide, digits.len().max(1));
        self.encode(&wide)
    }

    fn encode(&self, digits: &Digits) -> FqElement {
        let mut code = 0u64;
        for i in (0..self.f as usize).rev() {
            code = code * u64::from(self.p) + digits[i];
        }
        FqElement(code as u32)
    }

    fn decode(&self, a: FqElement) -> Digits {
        let mut out = [0; 2 * MAX_DEGREE];
        let mut c = a.0;
        for d in out.iter_mut().take(self.f as usize) {
            *d = u64::from(c % self.p);
            c /= self.p;
        }
        out
    }

    /// Reduces `digits[..len]` modulo the field modulus, in place.
    fn reduce(&self, digits: &mut Digits, len: usize) {
        let p = u64::from(self.p);
        let f = self.f as usize;
        for i in (f..len.min(digits.len())).rev() {
            let c = digits[i] % p;
            digits[i] = 0;
            if c == 0 {
                continue;
            }
            for j in 0..f {
                let m = u64::from(self.modulus[j]);
                digits[i - f + j] = (digits[i - f + j] + (p - c) * m) % p;
            }
        }
        for d in digits.iter_mut().take(f) {
            *d %= p;
        }
    }

    /// Addition and multiplication tables, indexed by `a·q + b`.
    pub(crate) fn tables(&self) -> (alloc::vec::Vec<FqElement>, alloc::vec::Vec<FqElement>) {
        let q = self.q as usize;
        let mut add = alloc::vec::Vec::with_capacity(q * q);
        let mut mul = alloc::vec::Vec::with_capacity(q * q);
        for a in self.elements() {
            for b in self.elements() {
                add.push(self.add(a, b));
                mul.push(self.mul(a, b));
            }
        }
        (add, mul)
    }

    pub fn add(&self, a: FqElement, b: FqElement) -> FqElement {
        if self.f == 1 {
            return FqElement(((u64::from(a.0) + u64::from(b.0)) % u64::from(self.p)) as u32);
        }
        let (x, y) = (self.decode(a), self.decode(b));
        let mut out = [0; 2 * MAX_DEGREE];
        for i in 0..self.f as usize {
            out[i] = (x[i] + y[i]) % u64::from(self.p);
        }
        self.encode(&out)
    }

    pub fn neg(&self, a: FqElement) -> FqElement {
        if self.f == 1 {
            return FqElement(((u64::from(self.p) - u64::from(a.0)) % u64::from(self.p)) as u32);
        }
        let x = self.decode(a);
        let mut out = [0; 2 * MAX_DEGREE];
        for i in 0..self.f as usize {
            out[i] = (u64::from(self.p) - x[i]) % u64::from(self.p);
        }
        self.encode(&out)
    }

    pub fn sub(&self, a: FqElement, b: FqElement) -> FqElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FqElement, b: FqElement) -> FqElement {
        let p = u64::from(self.p);
        if self.f == 1 {
            return FqElement(((u64::from(a.0) * u64::from(b.0)) % p) as u32);
        }
        let (x, y) = (self.decode(a), self.decode(b));
        let f = self.f as usize;
        let mut out = [0u64; 2 * MAX_DEGREE];
        for i in 0..f {
            if x[i] == 0 {
                continue;
            }
            for j in 0..f {
                out[i + j] = (out[i + j] + x[i] * y[j]) % p;
            }
        }
        self.reduce(&mut out, 2 * f - 1);
        self.encode(&out)
    }

    pub fn pow(&self, a: FqElement, mut e: u64) -> FqElement {
        let mut base = a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: FqElement) -> Option<FqElement> {
        if a.is_zero() {
            return None;
        }
        Some(self.pow(a, u64::from(self.q) - 2))
    }

    /// `a^(p^k)`; negative `k` gives the inverse automorphism.
    pub fn frobenius(&self, a: FqElement, k: i64) -> FqElement {
        let k = k.rem_euclid(i64::from(self.f)) as u32;
        self.pow(a, u64::from(self.p).pow(k))
    }

    /// Helper for formatting an element in the `g`-polynomial syntax.
    pub fn display(&self, a: FqElement) -> FqDisplay<'_> {
        FqDisplay { field: self, elem: a }
    }

    /// True when the element needs parentheses to act as a factor.
    pub fn is_compound(&self, a: FqElement) -> bool {
        self.digits(a).iter().filter(|&&d| d != 0).count() > 1
    }
}

pub struct FqDisplay<'a> {
    field: &'a Fq,
    elem: FqElement,
}

impl fmt::Display for FqDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = self.field.digits(self.elem);
        let mut first = true;
        for i in (0..self.field.f as usize).rev() {
            let d = digits[i];
            if d == 0 {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match (i, d) {
                (0, d) => write!(f, "{d}")?,
                (1, 1) => f.write_str("g")?,
                (1, d) => write!(f, "{d}*g")?,
                (i, 1) => write!(f, "g^{i}")?,
                (i, d) => write!(f, "{d}*g^{i}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while u64::from(d) * u64::from(d) <= u64::from(n) {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Remainder of `num` (degree `num_deg`) by the monic `den` (degree `den_deg`), over `F_p`.
fn poly_rem_is_zero(num: &[u64], den: &[u64], p: u64) -> bool {
    let mut r = [0u64; MAX_DEGREE + 1];
    r[..num.len()].copy_from_slice(num);
    let nd = num.len() - 1;
    let dd = den.len() - 1;
    for i in (dd..=nd).rev() {
        let c = r[i] % p;
        if c == 0 {
            continue;
        }
        for j in 0..=dd {
            r[i - dd + j] = (r[i - dd + j] + (p - c) * den[j]) % p;
        }
    }
    r[..dd].iter().all(|&c| c % p == 0)
}

fn smallest_irreducible(p: u32, f: u32) -> [u32; MAX_DEGREE] {
    let pw = u64::from(p);
    let f = f as usize;
    let count = pw.pow(f as u32);
    for code in 0..count {
        let mut poly = [0u64; MAX_DEGREE + 1];
        let mut c = code;
        for d in poly.iter_mut().take(f) {
            *d = c % pw;
            c /= pw;
        }
        poly[f] = 1;
        if poly[0] == 0 {
            continue;
        }
        let mut reducible = false;
        'deg: for d in 1..=f / 2 {
            for dcode in 0..pw.pow(d as u32) {
                let mut den = [0u64; MAX_DEGREE + 1];
                let mut c = dcode;
                for x in den.iter_mut().take(d) {
                    *x = c % pw;
                    c /= pw;
                }
                den[d] = 1;
                if poly_rem_is_zero(&poly[..=f], &den[..=d], pw) {
                    reducible = true;
                    break 'deg;
                }
            }
        }
        if !reducible {
            let mut out = [0u32; MAX_DEGREE];
            for i in 0..f {
                out[i] = poly[i] as u32;
            }
            return out;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}
