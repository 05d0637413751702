use num_traits::ToPrimitive;

use super::{CoeffError, Context, Poly, Rational};
use crate::lexer::{Cursor, Token, TokenKind};

impl Poly {
    /// Parses the polynomial grammar: integers, `/`, parameter names, `+ - * ^` and parentheses.
    ///
    /// Division is only by invertible single terms (constants, or powers of
    /// the Laurent parameter).
    pub fn parse(ctx: &Context, src: &str) -> Result<Poly, CoeffError> {
        let mut cur = Cursor::new(src)?;
        if cur.at_end() {
            return Err(cur.error("empty polynomial").into());
        }
        let p = sum(ctx, &mut cur)?;
        if !cur.at_end() {
            return Err(cur.error("unexpected trailing input").into());
        }
        Ok(p)
    }
}

fn sum(ctx: &Context, cur: &mut Cursor) -> Result<Poly, CoeffError> {
    let mut acc = product(ctx, cur)?;
    loop {
        if cur.eat(&TokenKind::Plus) {
            acc = &acc + &product(ctx, cur)?;
        } else if cur.eat(&TokenKind::Minus) {
            acc = &acc - &product(ctx, cur)?;
        } else {
            return Ok(acc);
        }
    }
}

fn product(ctx: &Context, cur: &mut Cursor) -> Result<Poly, CoeffError> {
    let mut acc = unary(ctx, cur)?;
    loop {
        if cur.eat(&TokenKind::Star) {
            acc = &acc * &unary(ctx, cur)?;
        } else if cur.peek() == Some(&TokenKind::Slash) {
            let col = cur.column();
            cur.advance();
            let d = unary(ctx, cur)?;
            if d.is_zero() {
                return Err(CoeffError::DivisionByZero);
            }
            let inv = d.inverse_monomial().map_err(|_| {
                CoeffError::from(crate::lexer::SyntaxError::new(
                    col,
                    "divisor is not an invertible monomial",
                ))
            })?;
            acc = &acc * &inv;
        } else {
            return Ok(acc);
        }
    }
}

fn unary(ctx: &Context, cur: &mut Cursor) -> Result<Poly, CoeffError> {
    if cur.eat(&TokenKind::Minus) {
        return Ok(-&unary(ctx, cur)?);
    }
    if cur.eat(&TokenKind::Plus) {
        return unary(ctx, cur);
    }
    power(ctx, cur)
}

fn power(ctx: &Context, cur: &mut Cursor) -> Result<Poly, CoeffError> {
    let base = atom(ctx, cur)?;
    if !cur.eat(&TokenKind::Caret) {
        return Ok(base);
    }
    let col = cur.column();
    let e = cur.exponent()?;
    let e = e
        .to_i32()
        .filter(|e| e.abs() <= 4096)
        .ok_or_else(|| CoeffError::from(crate::lexer::SyntaxError::new(col, "exponent out of range")))?;
    if e >= 0 {
        Ok(base.pow(e as u32))
    } else {
        Ok(base.inverse_monomial()?.pow((-e) as u32))
    }
}

fn atom(ctx: &Context, cur: &mut Cursor) -> Result<Poly, CoeffError> {
    let col = cur.column();
    match cur.advance() {
        Some(Token {
            kind: TokenKind::Int(n),
            ..
        }) => Ok(Poly::constant(ctx, Rational::from(n))),
        Some(Token {
            kind: TokenKind::Ident(name),
            ..
        }) => Poly::param(ctx, &name).map_err(|_| CoeffError::UnknownParameterAt { name, column: col }),
        Some(Token {
            kind: TokenKind::LParen,
            ..
        }) => {
            let p = sum(ctx, cur)?;
            cur.expect(&TokenKind::RParen, "')'")?;
            Ok(p)
        }
        Some(_) => Err(crate::lexer::SyntaxError::new(col, "expected number, parameter or '('").into()),
        None => Err(crate::lexer::SyntaxError::new(col, "unexpected end of input").into()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> Context {
        Context::standard()
    }

    #[test]
    fn canonical_round_trip() {
        for s in [
            "-4*a2^2*c1*c2",
            "a1 + 2",
            "omega",
            "0",
            "1/4",
            "-3/2*m*xi + kappa^2",
            "eps + eps^-1",
        ] {
            let p = Poly::parse(&ctx(), s).unwrap();
            assert_eq!(p.to_string(), s, "{s}");
        }
    }

    #[test]
    fn precedence_and_parens() {
        let p = Poly::parse(&ctx(), "-(a1 + 1)^2 * 2/4").unwrap();
        assert_eq!(p.to_string(), "-1/2*a1^2 - a1 - 1/2");
        let p = Poly::parse(&ctx(), "eps^(-2) * eps").unwrap();
        assert_eq!(p.to_string(), "eps^-1");
        let p = Poly::parse(&ctx(), "1/eps").unwrap();
        assert_eq!(p.to_string(), "eps^-1");
    }

    #[test]
    fn unicode_aliases() {
        assert_eq!(Poly::parse(&ctx(), "ω").unwrap().to_string(), "omega");
        assert_eq!(Poly::parse(&ctx(), "−κ").unwrap().to_string(), "-kappa");
    }

    #[test]
    fn errors_carry_positions() {
        match Poly::parse(&ctx(), "a1 + zz") {
            Err(CoeffError::UnknownParameterAt { name, column }) => {
                assert_eq!(name, "zz");
                assert_eq!(column, 6);
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(Poly::parse(&ctx(), "a1 +"), Err(CoeffError::Syntax(_))));
        assert!(matches!(Poly::parse(&ctx(), "1/0"), Err(CoeffError::DivisionByZero)));
        assert!(Poly::parse(&ctx(), "1/a1").is_err());
        assert!(Poly::parse(&ctx(), "a1^-1").is_err());
        assert!(Poly::parse(&ctx(), "(a1").is_err());
        assert!(Poly::parse(&ctx(), "").is_err());
    }
}
