//! Tokenizer shared by the polynomial and enveloping-algebra grammars.

use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TokenKind {
    Int(BigInt),
    Ident(String),
    /// `<key>` reference to a named element.
    Named(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    /// 1-based character column.
    pub column: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at column {column}: {message}")]
pub struct SyntaxError {
    pub column: usize,
    pub message: String,
}

impl SyntaxError {
    pub fn new(column: usize, message: impl Into<String>) -> Self {
        SyntaxError {
            column,
            message: message.into(),
        }
    }
}

pub fn tokenize(src: &str) -> Result<Vec<Token>, SyntaxError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let column = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let simple = match c {
            '+' => Some(TokenKind::Plus),
            '-' | '−' => Some(TokenKind::Minus),
            '*' | '·' => Some(TokenKind::Star),
            '/' => Some(TokenKind::Slash),
            '^' => Some(TokenKind::Caret),
            '(' => Some(TokenKind::LParen),
            ')' => Some(TokenKind::RParen),
            '[' => Some(TokenKind::LBracket),
            ']' => Some(TokenKind::RBracket),
            ',' => Some(TokenKind::Comma),
            _ => None,
        };
        if let Some(kind) = simple {
            out.push(Token { kind, column });
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            out.push(Token {
                kind: TokenKind::Int(digits.parse().expect("digits parse")),
                column,
            });
            continue;
        }
        if is_ident_start(c) {
            let start = i;
            while i < chars.len() && is_ident_continue(chars[i]) {
                i += 1;
            }
            out.push(Token {
                kind: TokenKind::Ident(chars[start..i].iter().collect()),
                column,
            });
            continue;
        }
        if c == '<' {
            let start = i + 1;
            let mut j = start;
            while j < chars.len() && chars[j] != '>' {
                j += 1;
            }
            if j == chars.len() {
                return Err(SyntaxError::new(column, "unterminated '<'"));
            }
            let key: String = chars[start..j].iter().collect::<String>().trim().to_string();
            if key.is_empty() {
                return Err(SyntaxError::new(column, "empty named element '<>'"));
            }
            out.push(Token {
                kind: TokenKind::Named(key),
                column,
            });
            i = j + 1;
            continue;
        }
        return Err(SyntaxError::new(column, format!("unexpected character '{c}'")));
    }
    Ok(out)
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_' || matches!(c, 'ω' | 'κ' | 'ε' | 'ξ' | 'Ξ')
}

fn is_ident_continue(c: char) -> bool {
    is_ident_start(c) || c.is_ascii_digit()
}

/// Cursor over a token stream with end-of-input column tracking.
pub struct Cursor {
    tokens: Vec<Token>,
    pos: usize,
    end_column: usize,
}

impl Cursor {
    pub fn new(src: &str) -> Result<Self, SyntaxError> {
        Ok(Cursor {
            tokens: tokenize(src)?,
            pos: 0,
            end_column: src.chars().count() + 1,
        })
    }

    pub fn peek(&self) -> Option<&TokenKind> {
        self.tokens.get(self.pos).map(|t| &t.kind)
    }

    pub fn column(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end_column, |t| t.column)
    }

    pub fn advance(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    pub fn eat(&mut self, kind: &TokenKind) -> bool {
        if self.peek() == Some(kind) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, kind: &TokenKind, what: &str) -> Result<(), SyntaxError> {
        if self.eat(kind) {
            Ok(())
        } else {
            Err(self.error(format!("expected {what}")))
        }
    }

    pub fn at_end(&self) -> bool {
        self.pos >= self.tokens.len()
    }

    pub fn error(&self, message: impl Into<String>) -> SyntaxError {
        SyntaxError::new(self.column(), message)
    }

    /// Parses an integer exponent: `n`, `-n`, or `(-n)`.
    pub fn exponent(&mut self) -> Result<i64, SyntaxError> {
        let paren = self.eat(&TokenKind::LParen);
        let neg = self.eat(&TokenKind::Minus);
        let col = self.column();
        let n = match self.advance() {
            Some(Token {
                kind: TokenKind::Int(n),
                ..
            }) => i64::try_from(n).map_err(|_| SyntaxError::new(col, "exponent too large"))?,
            _ => return Err(SyntaxError::new(col, "expected integer exponent")),
        };
        if paren {
            self.expect(&TokenKind::RParen, "')'")?;
        }
        Ok(if neg { -n } else { n })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tokens_and_columns() {
        let toks = tokenize("[<JP>, K1] - 3/4*a2^2").unwrap();
        assert_eq!(toks[0].kind, TokenKind::LBracket);
        assert_eq!(toks[1].kind, TokenKind::Named("JP".into()));
        assert_eq!(toks[3].kind, TokenKind::Ident("K1".into()));
        assert_eq!(toks[3].column, 8);
        assert_eq!(toks.len(), 13);
    }

    #[test]
    fn bad_character_reports_column() {
        let err = tokenize("a1 + $").unwrap_err();
        assert_eq!(err.column, 6);
        assert!(tokenize("<W1").is_err());
    }
}
