//! Text front end for multivector expressions.
//!
//! ```text
//! sum     := product (('+' | '-') product)*
//! product := unary ('*' unary)*
//! unary   := '-' unary | power
//! power   := atom ('^' INTEGER)*
//! atom    := INTEGER ('/' INTEGER)? | BLADE | '(' sum ')'
//! BLADE   := 'e' DIGIT+        (strictly ascending digits in 1..=n)
//! ```
//!
//! `^` binds tighter than unary minus, which binds tighter than `*`. There is
//! no multivector division; `/` only appears inside rational literals.

use alloc::boxed::Box;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;

use crate::blade::{Blade, BladeSyntaxError, Signature};
use crate::error::Error;
use crate::multivector::Multivector;
use crate::rational::Rational;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TokenKind {
    Integer,
    Slash,
    Blade(Blade),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    End,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Token<'a> {
    pub kind: TokenKind,
    pub lexeme: &'a str,
    /// Byte offset into the source.
    pub offset: usize,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum LexErrorKind {
    UnknownChar(char),
    Blade(BladeSyntaxError),
}

impl fmt::Display for LexErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LexErrorKind::UnknownChar(c) => write!(f, "unexpected character {c:?}"),
            LexErrorKind::Blade(e) => write!(f, "{e}"),
        }
    }
}

/// Everything that can go wrong turning text into a multivector.
#[derive(Clone, PartialEq, Eq, Debug, thiserror::Error)]
pub enum ParseError {
    #[error("at offset {offset}: {kind}")]
    Lex { offset: usize, kind: LexErrorKind },
    #[error("at offset {offset}: expected {}, found {found}", expected.join(" or "))]
    Syntax {
        offset: usize,
        found: String,
        expected: &'static [&'static str],
    },
    #[error("at offset {offset}: zero denominator")]
    ZeroDenominator { offset: usize },
    #[error("at offset {offset}: exponent too large")]
    ExponentTooLarge { offset: usize },
    #[error("empty expression")]
    Empty,
    #[error(transparent)]
    Eval(#[from] Error),
}

impl ParseError {
    /// Byte offset the error points at, if any.
    pub fn offset(&self) -> Option<usize> {
        match self {
            ParseError::Lex { offset, .. }
            | ParseError::Syntax { offset, .. }
            | ParseError::ZeroDenominator { offset }
            | ParseError::ExponentTooLarge { offset } => Some(*offset),
            ParseError::Empty | ParseError::Eval(_) => None,
        }
    }
}

/// Splits `input` into tokens; blade literals are validated against `n`
/// generators. The stream always ends with [`TokenKind::End`].
pub fn tokenize(input: &str, n: usize) -> Result<Vec<Token<'_>>, ParseError> {
    let bytes = input.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let single = |kind| Token {
            kind,
            lexeme: &input[i..i + 1],
            offset: i,
        };
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => out.push(single(TokenKind::Plus)),
            b'-' => out.push(single(TokenKind::Minus)),
            b'*' => out.push(single(TokenKind::Star)),
            b'/' => out.push(single(TokenKind::Slash)),
            b'^' => out.push(single(TokenKind::Caret)),
            b'(' => out.push(single(TokenKind::LParen)),
            b')' => out.push(single(TokenKind::RParen)),
            b'0'..=b'9' => {
                let end = digits_end(bytes, i);
                out.push(Token {
                    kind: TokenKind::Integer,
                    lexeme: &input[i..end],
                    offset: i,
                });
                i = end;
                continue;
            }
            b'e' => {
                let end = digits_end(bytes, i + 1);
                let lexeme = &input[i..end];
                let blade = Blade::parse_for(lexeme, n).map_err(|(pos, e)| ParseError::Lex {
                    offset: i + pos,
                    kind: LexErrorKind::Blade(e),
                })?;
                out.push(Token {
                    kind: TokenKind::Blade(blade),
                    lexeme,
                    offset: i,
                });
                i = end;
                continue;
            }
            _ => {
                let ch = input[i..].chars().next().unwrap_or('\u{fffd}');
                return Err(ParseError::Lex {
                    offset: i,
                    kind: LexErrorKind::UnknownChar(ch),
                });
            }
        }
        i += 1;
    }
    out.push(Token {
        kind: TokenKind::End,
        lexeme: "",
        offset: input.len(),
    });
    Ok(out)
}

fn digits_end(bytes: &[u8], mut i: usize) -> usize {
    while i < bytes.len() && bytes[i].is_ascii_digit() {
        i += 1;
    }
    i
}

/// Expression tree.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Expr {
    Constant(Rational),
    Blade(Blade),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    Paren(Box<Expr>),
}

const ATOM_START: &[&str] = &["number", "blade", "'('", "'-'"];
const AFTER_OPERAND: &[&str] = &["'+'", "'-'", "'*'", "'^'", "end of input"];
const AFTER_OPERAND_IN_PARENS: &[&str] = &["'+'", "'-'", "'*'", "'^'", "')'"];

struct Parser<'t, 's> {
    tokens: &'t [Token<'s>],
    pos: usize,
    /// Length of the source, to keep offsets inside it.
    source_len: usize,
}

impl<'s> Parser<'_, 's> {
    fn peek(&self) -> Token<'s> {
        self.tokens[self.pos]
    }

    fn bump(&mut self) -> Token<'s> {
        let t = self.tokens[self.pos];
        if t.kind != TokenKind::End {
            self.pos += 1;
        }
        t
    }

    fn error_at(&self, tok: Token<'_>, expected: &'static [&'static str]) -> ParseError {
        let found = match tok.kind {
            TokenKind::End => "end of input".to_string(),
            _ => alloc::format!("'{}'", tok.lexeme),
        };
        ParseError::Syntax {
            offset: tok.offset.min(self.source_len.saturating_sub(1)),
            found,
            expected,
        }
    }

    fn sum(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.product()?;
        loop {
            match self.peek().kind {
                TokenKind::Plus => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.product()?));
                }
                TokenKind::Minus => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.product()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn product(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        while self.peek().kind == TokenKind::Star {
            self.bump();
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.peek().kind == TokenKind::Minus {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let mut base = self.atom()?;
        while self.peek().kind == TokenKind::Caret {
            self.bump();
            let tok = self.peek();
            if tok.kind != TokenKind::Integer {
                return Err(self.error_at(tok, &["integer exponent"]));
            }
            self.bump();
            let exp: u32 = tok
                .lexeme
                .parse()
                .map_err(|_| ParseError::ExponentTooLarge { offset: tok.offset })?;
            base = Expr::Pow(Box::new(base), exp);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let tok = self.peek();
        match tok.kind {
            TokenKind::Integer => {
                self.bump();
                let num: BigInt = tok.lexeme.parse().expect("lexer only emits digits");
                if self.peek().kind != TokenKind::Slash {
                    return Ok(Expr::Constant(Rational::from(num)));
                }
                self.bump();
                let den_tok = self.peek();
                if den_tok.kind != TokenKind::Integer {
                    return Err(self.error_at(den_tok, &["denominator"]));
                }
                self.bump();
                let den: BigInt = den_tok.lexeme.parse().expect("lexer only emits digits");
                Rational::from_ratio(num, den)
                    .map(Expr::Constant)
                    .ok_or(ParseError::ZeroDenominator { offset: den_tok.offset })
            }
            TokenKind::Blade(b) => {
                self.bump();
                Ok(Expr::Blade(b))
            }
            TokenKind::LParen => {
                self.bump();
                let inner = self.sum()?;
                let close = self.peek();
                if close.kind != TokenKind::RParen {
                    return Err(self.error_at(close, AFTER_OPERAND_IN_PARENS));
                }
                self.bump();
                Ok(Expr::Paren(Box::new(inner)))
            }
            _ => Err(self.error_at(tok, ATOM_START)),
        }
    }
}

/// Parses a token stream produced by [`tokenize`].
pub fn parse(tokens: &[Token<'_>]) -> Result<Expr, ParseError> {
    let end = tokens
        .last()
        .filter(|t| t.kind == TokenKind::End)
        .ok_or(ParseError::Empty)?;
    let source_len = end.offset;
    if tokens.len() == 1 {
        return Err(ParseError::Empty);
    }
    let mut p = Parser {
        tokens,
        pos: 0,
        source_len,
    };
    let expr = p.sum()?;
    let next = p.peek();
    if next.kind != TokenKind::End {
        return Err(p.error_at(next, AFTER_OPERAND));
    }
    Ok(expr)
}

/// Evaluates an expression in the algebra `sig`.
pub fn eval(expr: &Expr, sig: Signature) -> Result<Multivector, Error> {
    Ok(match expr {
        Expr::Constant(c) => Multivector::scalar(sig, c.clone()),
        Expr::Blade(b) => Multivector::term(sig, *b, Rational::one())?,
        Expr::Neg(e) => -eval(e, sig)?,
        Expr::Add(a, b) => eval(a, sig)?.checked_add(&eval(b, sig)?)?,
        Expr::Sub(a, b) => eval(a, sig)?.checked_sub(&eval(b, sig)?)?,
        Expr::Mul(a, b) => eval(a, sig)?.checked_mul(&eval(b, sig)?)?,
        Expr::Pow(a, k) => eval(a, sig)?.pow(*k),
        Expr::Paren(e) => eval(e, sig)?,
    })
}

/// Tokenizes, parses and evaluates `input` in `sig`.
pub fn parse_multivector(input: &str, sig: Signature) -> Result<Multivector, ParseError> {
    let tokens = tokenize(input, sig.n())?;
    let expr = parse(&tokens)?;
    Ok(eval(&expr, sig)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn sig(p: usize, q: usize) -> Signature {
        Signature::new(p, q).unwrap()
    }

    fn kinds(input: &str, n: usize) -> Vec<TokenKind> {
        tokenize(input, n).unwrap().into_iter().map(|t| t.kind).collect()
    }

    #[test]
    fn lexes_simple_expression() {
        use TokenKind::*;
        assert_eq!(
            kinds("2 + 3*e1 - e12", 2),
            vec![
                Integer,
                Plus,
                Integer,
                Star,
                Blade(crate::Blade::from_indices(&[1])),
                Minus,
                Blade(crate::Blade::from_indices(&[1, 2])),
                End
            ]
        );
        let toks = tokenize("1/2", 0).unwrap();
        assert_eq!(
            toks.iter().map(|t| t.lexeme).collect::<Vec<_>>(),
            vec!["1", "/", "2", ""]
        );
    }

    #[test]
    fn lex_errors_carry_offsets() {
        let err = tokenize("1 + e21", 3).unwrap_err();
        assert_eq!(
            err,
            ParseError::Lex {
                offset: 6,
                kind: LexErrorKind::Blade(BladeSyntaxError::NotAscending)
            }
        );
        let err = tokenize("e11", 3).unwrap_err();
        assert_eq!(
            err,
            ParseError::Lex {
                offset: 2,
                kind: LexErrorKind::Blade(BladeSyntaxError::Repeated(1))
            }
        );
        let err = tokenize("e6", 5).unwrap_err();
        assert_eq!(err.offset(), Some(1));
        let err = tokenize("2 $ 3", 5).unwrap_err();
        assert_eq!(
            err,
            ParseError::Lex {
                offset: 2,
                kind: LexErrorKind::UnknownChar('$')
            }
        );
        let err = tokenize("x", 5).unwrap_err();
        assert_eq!(err.offset(), Some(0));
        let err = tokenize("e", 5).unwrap_err();
        assert_eq!(err.offset(), Some(0));
    }

    #[test]
    fn evaluates_products() {
        let s = sig(0, 2);
        assert_eq!(
            parse_multivector("e1*e2", s).unwrap(),
            parse_multivector("e12", s).unwrap()
        );
        assert_eq!(
            parse_multivector("e2*e1", s).unwrap(),
            parse_multivector("-e12", s).unwrap()
        );
        let s = sig(0, 1);
        assert_eq!(
            parse_multivector("(2+e1)^2", s).unwrap(),
            parse_multivector("5 + 4*e1", s).unwrap()
        );
    }

    #[test]
    fn precedence() {
        let s = sig(0, 1);
        // -e1^2 = -(e1^2) = -1
        assert_eq!(
            parse_multivector("-e1^2", s).unwrap(),
            Multivector::scalar(s, Rational::from(-1))
        );
        // 2*-e1 where unary minus binds tighter than *
        assert_eq!(
            parse_multivector("2*-e1", s).unwrap(),
            parse_multivector("-2*e1", s).unwrap()
        );
        // left-assoc subtraction
        assert_eq!(
            parse_multivector("5-2-1", s).unwrap(),
            Multivector::scalar(s, Rational::from(2))
        );
        // 1/2^2 is (1/2)^2
        assert_eq!(
            parse_multivector("1/2^2", s).unwrap(),
            Multivector::scalar(s, Rational::from_ratio(1, 4).unwrap())
        );
        assert_eq!(parse_multivector("e1^0", s).unwrap(), Multivector::one(s));
    }

    #[test]
    fn syntax_errors() {
        let s = sig(0, 2);
        let err = parse_multivector("1 +", s).unwrap_err();
        assert_eq!(
            err,
            ParseError::Syntax {
                offset: 2,
                found: "end of input".into(),
                expected: ATOM_START
            }
        );
        let err = parse_multivector("(1 + e1", s).unwrap_err();
        assert_eq!(err.offset(), Some(6));
        let err = parse_multivector("e1 e2", s).unwrap_err();
        assert_eq!(
            err,
            ParseError::Syntax {
                offset: 3,
                found: "'e2'".into(),
                expected: AFTER_OPERAND
            }
        );
        let err = parse_multivector("e1/2", s).unwrap_err();
        assert_eq!(err.offset(), Some(2));
        let err = parse_multivector("e1^e2", s).unwrap_err();
        assert_eq!(err.offset(), Some(3));
        let err = parse_multivector("1/0", s).unwrap_err();
        assert_eq!(err, ParseError::ZeroDenominator { offset: 2 });
        let err = parse_multivector("e1^99999999999", s).unwrap_err();
        assert_eq!(err, ParseError::ExponentTooLarge { offset: 3 });
        assert_eq!(parse_multivector("", s).unwrap_err(), ParseError::Empty);
        assert_eq!(parse_multivector("   ", s).unwrap_err(), ParseError::Empty);
        assert_eq!(parse_multivector(")", s).unwrap_err().offset(), Some(0));
    }

    #[test]
    fn round_trips_canonical_text() {
        for s in Signature::all() {
            for seed in 0..20 {
                let m = Multivector::random(s, seed, 3).unwrap();
                let scaled = m.scale(&Rational::from_ratio(-7, 3).unwrap());
                for x in [m, scaled] {
                    assert_eq!(parse_multivector(&x.to_string(), s).unwrap(), x);
                }
            }
        }
    }
}
