//! Expression grammar for enveloping-algebra elements.
//!
//! ```text
//! sum     := product (('+' | '-') product)*
//! product := unary (('*' | '/') unary)*
//! unary   := ('-' | '+') unary | power
//! power   := atom ('^' exponent)?
//! atom    := integer | generator | parameter | '<' key '>' | '(' sum ')' | '[' sum ',' sum ']'
//! ```
//!
//! Identifiers resolve to generators first and to parameters of the
//! algebra's context otherwise. Division and negative exponents are only
//! allowed on scalars that are invertible monomials.

use std::sync::Arc;

use num_traits::ToPrimitive;

use crate::coeffring::{CoeffError, Poly, Rational};
use crate::lexer::{Cursor, SyntaxError, Token, TokenKind};

use super::{EnvelopingAlgebra, UEAElement, UeaError};

/// The algebra family whose conventions define named elements such as `W1` or `C2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Galilei,
    GalileiExt,
    Poincare,
    NewtonHooke,
    /// Any other algebra: only the Galilean vector composites are defined.
    Other,
}

impl Family {
    pub fn of(name: &str) -> Family {
        match name {
            "galilei" => Family::Galilei,
            "galilei_ext" => Family::GalileiExt,
            "poincare" | "euclid4" => Family::Poincare,
            "newton_hooke" => Family::NewtonHooke,
            _ => Family::Other,
        }
    }
}

pub const NAMED_KEYS: [&str; 15] = [
    "W1", "W2", "W3", "WW", "PW", "KW", "JP", "JW", "KP", "PP", "KK", "JJ", "HJJ", "C1", "C2",
];

/// Defining expression of a named element in a family, if it has one.
pub fn named_expression(family: Family, key: &str) -> Option<&'static str> {
    let relativistic = family == Family::Poincare;
    Some(match key {
        "W1" if relativistic => "omega*H*J1 + P3*K2 - P2*K3",
        "W2" if relativistic => "omega*H*J2 + P1*K3 - P3*K1",
        "W3" if relativistic => "omega*H*J3 + P2*K1 - P1*K2",
        "W1" => "P3*K2 - P2*K3",
        "W2" => "P1*K3 - P3*K1",
        "W3" => "P2*K1 - P1*K2",
        "WW" => "<W1>^2 + <W2>^2 + <W3>^2",
        "PW" => "P1*<W1> + P2*<W2> + P3*<W3>",
        "KW" => "K1*<W1> + K2*<W2> + K3*<W3>",
        "JP" => "J1*P1 + J2*P2 + J3*P3",
        "JW" => "J1*<W1> + J2*<W2> + J3*<W3>",
        "KP" => "K1*P1 + K2*P2 + K3*P3",
        "PP" => "P1^2 + P2^2 + P3^2",
        "KK" => "K1^2 + K2^2 + K3^2",
        "JJ" => "J1^2 + J2^2 + J3^2",
        "HJJ" => "H^2*<JJ>",
        "C1" => match family {
            Family::Galilei => "<PP>",
            Family::Poincare => "<PP> + omega*H^2",
            Family::NewtonHooke => "<PP> + kappa*<KK>",
            Family::GalileiExt | Family::Other => return None,
        },
        "C2" => match family {
            Family::Galilei | Family::NewtonHooke => "<WW>",
            Family::Poincare => "<WW> + omega*<JP>^2",
            Family::GalileiExt | Family::Other => return None,
        },
        _ => return None,
    })
}

/// Named element of the algebra's own family, normal-ordered.
pub fn named_element(uea: &Arc<EnvelopingAlgebra>, key: &str) -> Result<UEAElement, UeaError> {
    named_element_in(uea, Family::of(uea.algebra().name()), key)
}

/// A family's named element evaluated in `uea`, matching generators by name.
///
/// This is how a target algebra's Casimir is written over the initial
/// algebra's generators.
pub fn named_element_in(uea: &Arc<EnvelopingAlgebra>, family: Family, key: &str) -> Result<UEAElement, UeaError> {
    let src = named_expression(family, key).ok_or_else(|| UeaError::UnknownNamedElement {
        key: key.to_string(),
        algebra: uea.algebra().name().to_string(),
    })?;
    parse_expression_in(uea, family, src)
}

/// Parses and normal-orders an expression over the algebra's own family.
pub fn parse_expression(uea: &Arc<EnvelopingAlgebra>, src: &str) -> Result<UEAElement, UeaError> {
    parse_expression_in(uea, Family::of(uea.algebra().name()), src)
}

pub fn parse_expression_in(uea: &Arc<EnvelopingAlgebra>, family: Family, src: &str) -> Result<UEAElement, UeaError> {
    let mut p = Parser {
        uea,
        family,
        cur: Cursor::new(src)?,
    };
    if p.cur.at_end() {
        return Err(p.cur.error("empty expression").into());
    }
    let e = p.sum()?;
    if !p.cur.at_end() {
        return Err(p.cur.error("unexpected trailing input").into());
    }
    Ok(e)
}

struct Parser<'a> {
    uea: &'a Arc<EnvelopingAlgebra>,
    family: Family,
    cur: Cursor,
}

impl Parser<'_> {
    fn sum(&mut self) -> Result<UEAElement, UeaError> {
        let mut acc = self.product()?;
        loop {
            if self.cur.eat(&TokenKind::Plus) {
                acc = acc.add(&self.product()?)?;
            } else if self.cur.eat(&TokenKind::Minus) {
                acc = acc.sub(&self.product()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn product(&mut self) -> Result<UEAElement, UeaError> {
        let mut acc = self.unary()?;
        loop {
            if self.cur.eat(&TokenKind::Star) {
                acc = acc.product(&self.unary()?)?;
            } else if self.cur.peek() == Some(&TokenKind::Slash) {
                let col = self.cur.column();
                self.cur.advance();
                let d = self.unary()?;
                acc = acc.scale(&self.invert(&d, col)?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn invert(&self, d: &UEAElement, col: usize) -> Result<Poly, UeaError> {
        let s = d
            .as_scalar()
            .ok_or_else(|| SyntaxError::new(col, "can only divide by a scalar"))?;
        if s.is_zero() {
            return Err(CoeffError::DivisionByZero.into());
        }
        s.inverse_monomial()
            .map_err(|_| SyntaxError::new(col, "divisor is not an invertible monomial").into())
    }

    fn unary(&mut self) -> Result<UEAElement, UeaError> {
        if self.cur.eat(&TokenKind::Minus) {
            return Ok(self.unary()?.neg());
        }
        if self.cur.eat(&TokenKind::Plus) {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<UEAElement, UeaError> {
        let base = self.atom()?;
        if !self.cur.eat(&TokenKind::Caret) {
            return Ok(base);
        }
        let col = self.cur.column();
        let e = self
            .cur
            .exponent()?
            .to_i32()
            .filter(|e| e.abs() <= 64)
            .ok_or_else(|| SyntaxError::new(col, "exponent out of range"))?;
        if e >= 0 {
            Ok(base.pow(e as u32))
        } else {
            let inv = self.invert(&base, col)?;
            UEAElement::scalar(self.uea, inv.pow((-e) as u32))
        }
    }

    fn atom(&mut self) -> Result<UEAElement, UeaError> {
        let col = self.cur.column();
        let uea = self.uea;
        match self.cur.advance() {
            Some(Token {
                kind: TokenKind::Int(n),
                ..
            }) => UEAElement::scalar(uea, Poly::constant(uea.context(), Rational::from(n))),
            Some(Token {
                kind: TokenKind::Ident(name),
                ..
            }) => {
                if let Some(g) = uea.algebra().generator(&name) {
                    return Ok(UEAElement::generator(uea, g.index));
                }
                match Poly::param(uea.context(), &name) {
                    Ok(p) => UEAElement::scalar(uea, p),
                    Err(_) => Err(UeaError::UnknownSymbol { name, column: col }),
                }
            }
            Some(Token {
                kind: TokenKind::Named(key),
                ..
            }) => named_element_in(uea, self.family, &key).map_err(|e| match e {
                UeaError::UnknownNamedElement { key, .. } => UeaError::UnknownSymbol {
                    name: format!("<{key}>"),
                    column: col,
                },
                other => other,
            }),
            Some(Token {
                kind: TokenKind::LParen,
                ..
            }) => {
                let e = self.sum()?;
                self.cur.expect(&TokenKind::RParen, "')'")?;
                Ok(e)
            }
            Some(Token {
                kind: TokenKind::LBracket,
                ..
            }) => {
                let a = self.sum()?;
                self.cur.expect(&TokenKind::Comma, "','")?;
                let b = self.sum()?;
                self.cur.expect(&TokenKind::RBracket, "']'")?;
                Ok(a.commutator(&b)?)
            }
            Some(_) => Err(SyntaxError::new(col, "expected generator, number, `<key>`, '(' or '['").into()),
            None => Err(SyntaxError::new(col, "unexpected end of input").into()),
        }
    }
}
