//! Recursive-descent parser for scalar expressions.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := ('-' | '+') unary | power
//! power   := atom ('^' integer)?
//! atom    := integer | identifier | 'i' | '(' expr ')'
//! ```
//!
//! Division is only allowed by a nonzero constant.

use num_bigint::BigInt;
use thiserror::Error;

use super::{GaussRational, PolyScalar, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{message} at position {position}")]
pub struct ParseError {
    /// Byte offset into the input.
    pub position: usize,
    pub message: String,
}

impl ParseError {
    fn new(position: usize, message: impl Into<String>) -> Self {
        ParseError {
            position,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut pos = 0;
    while pos < bytes.len() {
        let c = bytes[pos];
        let start = pos;
        let tok = match c {
            b' ' | b'\t' | b'\r' | b'\n' => {
                pos += 1;
                continue;
            }
            b'+' => Token::Plus,
            b'-' => Token::Minus,
            b'*' => Token::Star,
            b'/' => Token::Slash,
            b'^' => Token::Caret,
            b'(' => Token::LParen,
            b')' => Token::RParen,
            b'0'..=b'9' => {
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                let digits = &text[start..pos];
                out.push((start, Token::Int(digits.parse().expect("ascii digits"))));
                continue;
            }
            c if c.is_ascii_alphabetic() => {
                while pos < bytes.len()
                    && (bytes[pos].is_ascii_alphanumeric() || bytes[pos] == b'_')
                {
                    pos += 1;
                }
                out.push((start, Token::Ident(text[start..pos].to_string())));
                continue;
            }
            _ => {
                let ch = text[start..].chars().next().unwrap_or('?');
                return Err(ParseError::new(
                    start,
                    format!("unexpected character '{ch}'"),
                ));
            }
        };
        out.push((start, tok));
        pos += 1;
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    idx: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.idx).map(|(_, t)| t)
    }

    fn position(&self) -> usize {
        self.tokens.get(self.idx).map_or(self.end, |(p, _)| *p)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.idx).map(|(_, t)| t.clone());
        self.idx += 1;
        t
    }

    fn expr(&mut self) -> Result<PolyScalar, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Some(Token::Minus) => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<PolyScalar, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.bump();
                    acc = &acc * &self.unary()?;
                }
                Some(Token::Slash) => {
                    self.bump();
                    let at = self.position();
                    let divisor = self.unary()?;
                    let c = divisor
                        .as_constant()
                        .ok_or_else(|| ParseError::new(at, "division by a non-constant"))?;
                    let inv = c
                        .inv()
                        .ok_or_else(|| ParseError::new(at, "division by zero"))?;
                    acc = acc.scale(&inv);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<PolyScalar, ParseError> {
        match self.peek() {
            Some(Token::Minus) => {
                self.bump();
                Ok(-self.unary()?)
            }
            Some(Token::Plus) => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<PolyScalar, ParseError> {
        let base = self.atom()?;
        if self.peek() != Some(&Token::Caret) {
            return Ok(base);
        }
        self.bump();
        let at = self.position();
        match self.bump() {
            Some(Token::Int(n)) => {
                let exp: u32 = u32::try_from(&n)
                    .ok()
                    .filter(|&e| e >= 1)
                    .ok_or_else(|| ParseError::new(at, "exponent must be a positive integer"))?;
                Ok(base.pow(exp))
            }
            _ => Err(ParseError::new(at, "expected a positive integer exponent")),
        }
    }

    fn atom(&mut self) -> Result<PolyScalar, ParseError> {
        let at = self.position();
        match self.bump() {
            Some(Token::Int(n)) => Ok(PolyScalar::from_rational(Rational::from_integer(n))),
            Some(Token::Ident(name)) if name == "i" => Ok(PolyScalar::constant(GaussRational::i())),
            Some(Token::Ident(name)) => Ok(PolyScalar::var(name)),
            Some(Token::LParen) => {
                let inner = self.expr()?;
                let close = self.position();
                match self.bump() {
                    Some(Token::RParen) => Ok(inner),
                    _ => Err(ParseError::new(close, "expected ')'")),
                }
            }
            Some(_) => Err(ParseError::new(at, "expected a number, parameter or '('")),
            None => Err(ParseError::new(at, "unexpected end of expression")),
        }
    }
}

pub(super) fn parse_expression(text: &str) -> Result<PolyScalar, ParseError> {
    let tokens = tokenize(text)?;
    if tokens.is_empty() {
        return Err(ParseError::new(0, "empty expression"));
    }
    let mut parser = Parser {
        tokens,
        idx: 0,
        end: text.len(),
    };
    let value = parser.expr()?;
    if parser.idx < parser.tokens.len() {
        return Err(ParseError::new(
            parser.position(),
            "unexpected trailing input",
        ));
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::super::Monomial;
    use super::*;

    #[test]
    fn reads_sums_of_parameters() {
        let v = parse_expression("k1+k2").unwrap();
        assert_eq!(v.len(), 2);
        assert!(v.terms().all(|(m, c)| m.degree() == 1 && c.is_one()));
    }

    #[test]
    fn negative_coefficient() {
        let v = parse_expression("-4*a").unwrap();
        assert_eq!(
            v,
            PolyScalar::term(GaussRational::from_int(-4), Monomial::var("a"))
        );
    }

    #[test]
    fn rational_imaginary_constant() {
        let v = parse_expression("1/2*i").unwrap();
        assert_eq!(
            v.as_constant(),
            Some(GaussRational::new(
                Rational::from_integer(0.into()),
                Rational::new(1.into(), 2.into())
            ))
        );
    }

    #[test]
    fn powers_and_parentheses() {
        let v = parse_expression("(t+U)^2").unwrap();
        assert_eq!(v, parse_expression("t^2+2*t*U+U^2").unwrap());
        assert_eq!(
            parse_expression("t/2").unwrap(),
            parse_expression("1/2*t").unwrap()
        );
        assert_eq!(
            parse_expression("1/(1+i)").unwrap(),
            parse_expression("1/2-1/2*i").unwrap()
        );
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_expression("a+*b").unwrap_err();
        assert_eq!(e.position, 2);
        let e = parse_expression("1/t").unwrap_err();
        assert_eq!(e.position, 2);
        assert!(e.message.contains("non-constant"));
        let e = parse_expression("3/(2-2)").unwrap_err();
        assert!(e.message.contains("zero"));
        assert_eq!(parse_expression("a b").unwrap_err().position, 2);
        assert_eq!(parse_expression("(a").unwrap_err().position, 2);
        assert_eq!(parse_expression("a$").unwrap_err().position, 1);
        assert!(parse_expression("").is_err());
        assert!(parse_expression("a^0").is_err());
        assert!(parse_expression("a^b").is_err());
    }
}
