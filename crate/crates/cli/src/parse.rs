//! Element syntax.
//!
//! ```text
//! expr  := ['+'|'-'] term (('+'|'-') term)*
//! term  := power ('*' power)*
//! power := atom ['^' exp]
//! atom  := INT | 'pi' | 't' | 'g' | 'T'k | '[' expr ']' | '(' expr ')' | 'O(' expr ')'
//! exp   := INT | '-' INT | '(' ['-'] INT ['/' INT] ')'
//! ```
//!
//! Brackets hold a Hahn series in `t` over `F_q` (`g` generates `F_q` over
//! `F_p`); outside brackets the ring is `B` (in `pi`) or a Tate algebra over
//! it (in `T1…Tn`).

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use robba_core::{BaseField, Error, HahnSeries, PiTail, Rational, TateContext, TateSeries, WittSeries};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseError {
    Syntax { position: usize, message: String },
    Kernel(Error),
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseError::Syntax { position, message } => write!(f, "syntax error at {position}: {message}"),
            ParseError::Kernel(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for ParseError {}

impl From<Error> for ParseError {
    fn from(e: Error) -> Self {
        ParseError::Kernel(e)
    }
}

pub type Result<T> = std::result::Result<T, ParseError>;

fn syntax<T>(position: usize, message: impl Into<String>) -> Result<T> {
    Err(ParseError::Syntax { position, message: message.into() })
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(i64),
    Ident(String),
    Sym(char),
    End,
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let mut n: i64 = 0;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                let d = i64::from(chars[i].1.to_digit(10).unwrap());
                n = match n.checked_mul(10).and_then(|n| n.checked_add(d)) {
                    Some(n) => n,
                    None => return syntax(pos, "integer too large"),
                };
                i += 1;
            }
            out.push((Tok::Int(n), pos));
        } else if c.is_alphabetic() {
            let mut s = String::new();
            while i < chars.len() && (chars[i].1.is_alphanumeric() || chars[i].1 == '_') {
                s.push(chars[i].1);
                i += 1;
            }
            out.push((Tok::Ident(s), pos));
        } else if "+-*^/()[]".contains(c) {
            out.push((Tok::Sym(c), pos));
            i += 1;
        } else {
            return syntax(pos, format!("unexpected character '{c}'"));
        }
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

#[derive(Clone, Debug)]
struct Node {
    kind: Kind,
    pos: usize,
}

#[derive(Clone, Debug)]
enum Kind {
    Int(i64),
    Pi,
    T,
    G,
    Var(usize),
    Bracket(Box<Node>),
    BigO(Box<Node>),
    Neg(Box<Node>),
    Add(Box<Node>, Box<Node>),
    Sub(Box<Node>, Box<Node>),
    Mul(Box<Node>, Box<Node>),
    Pow(Box<Node>, Rational),
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn eat(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Sym(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            syntax(self.pos(), format!("expected '{c}'"))
        }
    }

    fn expr(&mut self) -> Result<Node> {
        let pos = self.pos();
        let mut acc = if self.eat('-') {
            let t = self.term()?;
            Node { kind: Kind::Neg(Box::new(t)), pos }
        } else {
            self.eat('+');
            self.term()?
        };
        loop {
            let pos = self.pos();
            if self.eat('+') {
                let t = self.term()?;
                acc = Node { kind: Kind::Add(Box::new(acc), Box::new(t)), pos };
            } else if self.eat('-') {
                let t = self.term()?;
                acc = Node { kind: Kind::Sub(Box::new(acc), Box::new(t)), pos };
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Node> {
        let mut acc = self.power()?;
        loop {
            let pos = self.pos();
            if !self.eat('*') {
                return Ok(acc);
            }
            let rhs = self.power()?;
            acc = Node { kind: Kind::Mul(Box::new(acc), Box::new(rhs)), pos };
        }
    }

    fn power(&mut self) -> Result<Node> {
        let base = self.atom()?;
        let pos = self.pos();
        if !self.eat('^') {
            return Ok(base);
        }
        let e = self.exponent()?;
        Ok(Node { kind: Kind::Pow(Box::new(base), e), pos })
    }

    fn int(&mut self) -> Result<i64> {
        match self.bump() {
            (Tok::Int(n), _) => Ok(n),
            (_, pos) => syntax(pos, "expected an integer"),
        }
    }

    fn exponent(&mut self) -> Result<Rational> {
        if self.eat('-') {
            return Ok(Rational::from_integer(-self.int()?));
        }
        if !self.eat('(') {
            return Ok(Rational::from_integer(self.int()?));
        }
        let neg = self.eat('-');
        let num = self.int()?;
        let den = if self.eat('/') {
            let pos = self.pos();
            let d = self.int()?;
            if d == 0 {
                return syntax(pos, "zero denominator");
            }
            d
        } else {
            1
        };
        self.expect(')')?;
        Ok(Rational::new(if neg { -num } else { num }, den))
    }

    fn atom(&mut self) -> Result<Node> {
        let (tok, pos) = self.bump();
        let kind = match tok {
            Tok::Int(n) => Kind::Int(n),
            Tok::Ident(s) => match s.as_str() {
                "pi" | "ϖ" => Kind::Pi,
                "t" => Kind::T,
                "g" => Kind::G,
                "O" => {
                    self.expect('(')?;
                    let inner = self.expr()?;
                    self.expect(')')?;
                    Kind::BigO(Box::new(inner))
                }
                _ => match s.strip_prefix('T').and_then(|k| k.parse::<usize>().ok()) {
                    Some(k) if k >= 1 => Kind::Var(k),
                    _ => return syntax(pos, format!("unknown symbol '{s}'")),
                },
            },
            Tok::Sym('(') => {
                let inner = self.expr()?;
                self.expect(')')?;
                return Ok(inner);
            }
            Tok::Sym('[') => {
                let inner = self.expr()?;
                self.expect(']')?;
                Kind::Bracket(Box::new(inner))
            }
            Tok::Sym(c) => return syntax(pos, format!("unexpected '{c}'")),
            Tok::End => return syntax(pos, "unexpected end of input"),
        };
        Ok(Node { kind, pos })
    }
}

fn parse_tree(text: &str) -> Result<Node> {
    let mut p = Parser { toks: lex(text)?, at: 0 };
    let node = p.expr()?;
    if *p.peek() != Tok::End {
        return syntax(p.pos(), "unexpected trailing input");
    }
    Ok(node)
}

fn small_power(e: Rational, pos: usize) -> Result<u32> {
    if !e.is_integer() || e.is_negative() {
        return syntax(pos, "only non-negative integer powers are allowed here");
    }
    u32::try_from(e.to_integer()).or_else(|_| syntax(pos, "exponent too large"))
}

/// `t^e` or `t`: the exponent of a bare `t`-power.
fn t_power(node: &Node) -> Option<Rational> {
    match &node.kind {
        Kind::T => Some(Rational::one()),
        Kind::Pow(b, e) if matches!(b.kind, Kind::T) => Some(*e),
        _ => None,
    }
}

fn pi_power(node: &Node) -> Option<i64> {
    match &node.kind {
        Kind::Pi => Some(1),
        Kind::Int(1) => Some(0),
        Kind::Pow(b, e) if matches!(b.kind, Kind::Pi) && e.is_integer() => Some(e.to_integer()),
        _ => None,
    }
}

fn hahn(node: &Node, field: BaseField) -> Result<HahnSeries> {
    let fq = field.fq();
    Ok(match &node.kind {
        Kind::Int(n) => HahnSeries::constant(field, fq.from_int(*n)),
        Kind::T => HahnSeries::t_pow(field, Rational::one())?,
        Kind::G => match fq.generator() {
            Some(g) => HahnSeries::constant(field, g),
            None => return syntax(node.pos, "'g' needs a field with q > p"),
        },
        Kind::Neg(a) => hahn(a, field)?.neg(),
        Kind::Add(a, b) => hahn(a, field)?.add(&hahn(b, field)?),
        Kind::Sub(a, b) => hahn(a, field)?.sub(&hahn(b, field)?),
        Kind::Mul(a, b) => hahn(a, field)?.mul(&hahn(b, field)?),
        Kind::Pow(b, e) if matches!(b.kind, Kind::T) => HahnSeries::t_pow(field, *e)?,
        Kind::Pow(b, e) => hahn(b, field)?.pow(small_power(*e, node.pos)?),
        Kind::BigO(inner) => match t_power(inner) {
            Some(e) => HahnSeries::big_o(field, e)?,
            None if matches!(inner.kind, Kind::Int(1)) => HahnSeries::big_o(field, Rational::zero())?,
            None => return syntax(inner.pos, "expected O(t^M)"),
        },
        Kind::Pi | Kind::Var(_) | Kind::Bracket(_) => {
            return syntax(node.pos, "only t, g and integers may appear inside [...]")
        }
    })
}

fn witt(node: &Node, field: BaseField) -> Result<WittSeries> {
    Ok(match &node.kind {
        Kind::Int(n) => WittSeries::teichmuller(HahnSeries::constant(field, field.fq().from_int(*n))),
        Kind::Pi => WittSeries::pi_pow(field, 1),
        Kind::Bracket(h) => WittSeries::teichmuller(hahn(h, field)?),
        Kind::Neg(a) => witt(a, field)?.neg(),
        Kind::Add(a, b) => witt(a, field)?.add(&witt(b, field)?),
        Kind::Sub(a, b) => witt(a, field)?.sub(&witt(b, field)?),
        Kind::Mul(a, b) => witt(a, field)?.mul(&witt(b, field)?),
        Kind::Pow(b, e) if matches!(b.kind, Kind::Pi) => {
            if !e.is_integer() {
                return syntax(node.pos, "powers of pi must be integers");
            }
            WittSeries::pi_pow(field, e.to_integer())
        }
        Kind::Pow(b, e) => witt(b, field)?.pow(small_power(*e, node.pos)?),
        Kind::BigO(inner) => {
            let tail = match &inner.kind {
                Kind::Mul(a, b) => match (pi_power(a), b.kind.clone()) {
                    (Some(n), Kind::Bracket(h)) => match t_power(&h) {
                        Some(v) => PiTail { start: n, min_val: v },
                        None => return syntax(h.pos, "expected [t^V]"),
                    },
                    _ => return syntax(inner.pos, "expected O(pi^N*[t^V])"),
                },
                _ => match pi_power(inner) {
                    Some(n) => PiTail::new(n),
                    None => return syntax(inner.pos, "expected O(pi^N)"),
                },
            };
            WittSeries::from_coeffs(field, std::iter::empty(), Some(tail))
        }
        Kind::T | Kind::G => return syntax(node.pos, "t and g must appear inside [...]"),
        Kind::Var(_) => return syntax(node.pos, "variables are not allowed here"),
    })
}

fn has_var(node: &Node) -> bool {
    match &node.kind {
        Kind::Var(_) => true,
        Kind::Neg(a) | Kind::Pow(a, _) | Kind::Bracket(a) | Kind::BigO(a) => has_var(a),
        Kind::Add(a, b) | Kind::Sub(a, b) | Kind::Mul(a, b) => has_var(a) || has_var(b),
        _ => false,
    }
}

fn max_var(node: &Node) -> usize {
    match &node.kind {
        Kind::Var(k) => *k,
        Kind::Neg(a) | Kind::Pow(a, _) | Kind::Bracket(a) | Kind::BigO(a) => max_var(a),
        Kind::Add(a, b) | Kind::Sub(a, b) | Kind::Mul(a, b) => max_var(a).max(max_var(b)),
        _ => 0,
    }
}

fn tate(node: &Node, ctx: &Arc<TateContext>) -> Result<TateSeries> {
    if !has_var(node) {
        return Ok(TateSeries::constant(ctx, witt(node, ctx.field())?));
    }
    Ok(match &node.kind {
        Kind::Var(k) => {
            if *k > ctx.n_vars() {
                return syntax(node.pos, format!("T{k} exceeds the {} variables of the algebra", ctx.n_vars()));
            }
            TateSeries::variable(ctx, k - 1)
        }
        Kind::Neg(a) => tate(a, ctx)?.neg(),
        Kind::Add(a, b) => tate(a, ctx)?.add(&tate(b, ctx)?),
        Kind::Sub(a, b) => tate(a, ctx)?.sub(&tate(b, ctx)?),
        Kind::Mul(a, b) => tate(a, ctx)?.mul(&tate(b, ctx)?),
        Kind::Pow(b, e) => {
            let base = tate(b, ctx)?;
            let mut acc = TateSeries::one(ctx);
            for _ in 0..small_power(*e, node.pos)? {
                acc = acc.mul(&base);
            }
            acc
        }
        _ => return syntax(node.pos, "variables must not appear inside [...] or O(...)"),
    })
}

pub fn parse_hahn(text: &str, field: BaseField) -> Result<HahnSeries> {
    hahn(&parse_tree(text)?, field)
}

pub fn parse_witt(text: &str, field: BaseField) -> Result<WittSeries> {
    witt(&parse_tree(text)?, field)
}

pub fn parse_tate(text: &str, ctx: &Arc<TateContext>) -> Result<TateSeries> {
    tate(&parse_tree(text)?, ctx)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Element {
    Witt(WittSeries),
    Tate(TateSeries),
}

/// Parses into `B`, or into a Tate algebra when `T1…Tn` occur. Variables
/// beyond `weights` get weight 0.
pub fn parse_element(text: &str, field: BaseField, weights: &[Rational], r: Rational) -> Result<Element> {
    let tree = parse_tree(text)?;
    if !has_var(&tree) {
        return Ok(Element::Witt(witt(&tree, field)?));
    }
    let mut w = weights.to_vec();
    w.resize(w.len().max(max_var(&tree)), Rational::zero());
    let ctx = TateContext::new(field, w, r)?;
    Ok(Element::Tate(tate(&tree, &ctx)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use robba_core::Fq;

    fn f2() -> BaseField {
        BaseField::prime(2).unwrap()
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn primitive_element() {
        let x = parse_witt("pi - [t]", f2()).unwrap();
        assert_eq!(x.coeff(1).unwrap(), &HahnSeries::one(f2()));
        assert_eq!(x.coeff(0).unwrap(), &HahnSeries::t_pow(f2(), q(1, 1)).unwrap());
        assert_eq!(x.to_string(), "pi + [t]");
    }

    #[test]
    fn hahn_terms_and_precision() {
        let x = parse_hahn("1 + t^(1/2) + t^2 + O(t^3)", f2()).unwrap();
        assert_eq!(x.to_string(), "1 + t^(1/2) + t^2 + O(t^3)");
        let k4 = BaseField::new(Fq::new(2, 2).unwrap(), 8);
        let y = parse_hahn("(g + 1)*t^(-1) + g", k4).unwrap();
        assert_eq!(y.to_string(), "(g + 1)*t^(-1) + g");
        assert!(matches!(parse_hahn("g", f2()), Err(ParseError::Syntax { position: 0, .. })));
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(
            parse_witt("pi - [", f2()),
            Err(ParseError::Syntax { position: 6, message: "unexpected end of input".into() })
        );
        assert!(matches!(parse_witt("pi + t", f2()), Err(ParseError::Syntax { position: 5, .. })));
        assert!(matches!(parse_witt("pi # 2", f2()), Err(ParseError::Syntax { position: 3, .. })));
        assert!(matches!(parse_witt("[t^(1/3)]", f2()), Err(ParseError::Kernel(Error::BadExponent(_)))));
    }

    #[test]
    fn tails() {
        let x = parse_witt("pi + O(pi^3*[t^2])", f2()).unwrap();
        assert_eq!(x.tail(), Some(PiTail { start: 3, min_val: q(2, 1) }));
        assert_eq!(x.to_string(), "pi + O(pi^3*[t^2])");
    }

    #[test]
    fn tate_elements() {
        let e = parse_element("T1^2 - [t]*T2 + pi", f2(), &[q(1, 2)], q(1, 1)).unwrap();
        let Element::Tate(s) = e else { panic!("expected a Tate series") };
        assert_eq!(s.ctx().weights(), &[q(1, 2), q(0, 1)]);
        assert_eq!(s.terms().len(), 3);
    }
}
