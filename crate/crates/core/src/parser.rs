//! Recursive-descent parser for polynomial expressions such as
//! `(x^2+16x-21)^3 + (2x^2-4x+42)^3`.
//!
//! Grammar, loosest binding first:
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := '-' term | product
//! product := power (('*' power) | ('/' integer) | implicit power)*
//! power   := atom ('^' integer)?
//! atom    := integer | identifier | '(' expr ')'
//! ```
//!
//! `implicit` is juxtaposition after an integer literal (`16x`, `6(a+b)`,
//! `a0^2a1`) or between an identifier and `(` (`q(q^6-p^6)`). Two adjacent
//! identifiers are rejected. Division is only by a nonzero integer literal,
//! which is enough to read back printed rational coefficients.

use num_traits::{One, Zero};

use crate::algebra::{Integer, Polynomial, Rational, SymbolTable};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown symbol `{name}` at position {position}")]
    UnknownSymbol { name: String, position: usize },
    #[error("negative exponent at position {position}")]
    NegativeExponent { position: usize },
}

/// Expression text together with the symbols it may mention.
#[derive(Debug, Clone, Copy)]
pub struct ExpressionSource<'a> {
    pub text: &'a str,
    pub symbols: &'a SymbolTable,
}

impl<'a> ExpressionSource<'a> {
    pub fn new(text: &'a str, symbols: &'a SymbolTable) -> Self {
        Self { text, symbols }
    }
}

pub fn parse(src: ExpressionSource<'_>) -> Result<Polynomial, ParseError> {
    let tokens = tokenize(src.text)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        symbols: src.symbols,
        end: src.text.len(),
    };
    let out = parser.expr()?;
    match parser.peek() {
        None => Ok(out),
        Some(tok) => Err(syntax(tok.position, format!("unexpected {}", tok.kind))),
    }
}

/// Shorthand for `parse(ExpressionSource::new(text, symbols))`.
pub fn parse_polynomial(text: &str, symbols: &SymbolTable) -> Result<Polynomial, ParseError> {
    parse(ExpressionSource::new(text, symbols))
}

/// Canonical text form; `parse(format(p)) == p`.
pub fn format(p: &Polynomial) -> String {
    p.to_string()
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Kind {
    Int(Integer),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

impl std::fmt::Display for Kind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Kind::Int(n) => write!(f, "number `{n}`"),
            Kind::Ident(s) => write!(f, "identifier `{s}`"),
            Kind::Plus => f.write_str("`+`"),
            Kind::Minus => f.write_str("`-`"),
            Kind::Star => f.write_str("`*`"),
            Kind::Slash => f.write_str("`/`"),
            Kind::Caret => f.write_str("`^`"),
            Kind::LParen => f.write_str("`(`"),
            Kind::RParen => f.write_str("`)`"),
        }
    }
}

#[derive(Debug, Clone)]
struct Token {
    kind: Kind,
    position: usize,
}

fn syntax(position: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        position,
        message: message.into(),
    }
}

fn tokenize(text: &str) -> Result<Vec<Token>, ParseError> {
    let bytes = text.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let kind = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => Kind::Plus,
            b'-' => Kind::Minus,
            b'*' => Kind::Star,
            b'/' => Kind::Slash,
            b'^' => Kind::Caret,
            b'(' => Kind::LParen,
            b')' => Kind::RParen,
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let digits = &text[start..i];
                tokens.push(Token {
                    kind: Kind::Int(digits.parse().expect("ascii digits")),
                    position: start,
                });
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                tokens.push(Token {
                    kind: Kind::Ident(text[start..i].to_string()),
                    position: start,
                });
                continue;
            }
            _ => {
                let ch = text[start..].chars().next().unwrap_or('?');
                return Err(syntax(start, format!("unexpected character `{ch}`")));
            }
        };
        tokens.push(Token {
            kind,
            position: start,
        });
        i += 1;
    }
    Ok(tokens)
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    symbols: &'a SymbolTable,
    end: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn peek_kind(&self) -> Option<&Kind> {
        self.peek().map(|t| &t.kind)
    }

    fn next(&mut self) -> Option<Token> {
        let tok = self.tokens.get(self.pos).cloned();
        if tok.is_some() {
            self.pos += 1;
        }
        tok
    }

    fn here(&self) -> usize {
        self.peek().map_or(self.end, |t| t.position)
    }

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek_kind() {
                Some(Kind::Plus) => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Kind::Minus) => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        if let Some(Kind::Minus) = self.peek_kind() {
            self.pos += 1;
            return Ok(-self.term()?);
        }
        self.product()
    }

    fn product(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.power()?;
        loop {
            match self.peek_kind() {
                Some(Kind::Star) => {
                    self.pos += 1;
                    acc = &acc * &self.power()?;
                }
                Some(Kind::Slash) => {
                    self.pos += 1;
                    let at = self.here();
                    let divisor = self.integer("divisor")?;
                    if divisor.is_zero() {
                        return Err(syntax(at, "division by zero"));
                    }
                    acc = acc.scale(&Rational::new(Integer::one(), divisor));
                }
                Some(next) if self.implicit_product_allowed(next) => {
                    acc = &acc * &self.power()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn implicit_product_allowed(&self, next: &Kind) -> bool {
        let Some(prev) = self.pos.checked_sub(1).map(|i| &self.tokens[i].kind) else {
            return false;
        };
        matches!(
            (prev, next),
            (Kind::Int(_), Kind::Ident(_)) | (Kind::Int(_), Kind::LParen) | (Kind::Ident(_), Kind::LParen)
        )
    }

    fn power(&mut self) -> Result<Polynomial, ParseError> {
        let base = self.atom()?;
        if let Some(Kind::Caret) = self.peek_kind() {
            self.pos += 1;
            if let Some(Kind::Minus) = self.peek_kind() {
                return Err(ParseError::NegativeExponent {
                    position: self.here(),
                });
            }
            let at = self.here();
            let exponent = self.integer("exponent")?;
            let exponent: u32 = exponent
                .try_into()
                .map_err(|_| syntax(at, "exponent out of range"))?;
            return Ok(base.pow(exponent));
        }
        Ok(base)
    }

    fn integer(&mut self, what: &str) -> Result<Integer, ParseError> {
        let at = self.here();
        match self.next() {
            Some(Token {
                kind: Kind::Int(n), ..
            }) => Ok(n),
            Some(tok) => Err(syntax(
                tok.position,
                format!("expected integer {what}, found {}", tok.kind),
            )),
            None => Err(syntax(at, format!("expected integer {what}, found end of input"))),
        }
    }

    fn atom(&mut self) -> Result<Polynomial, ParseError> {
        let at = self.here();
        let Some(tok) = self.next() else {
            return Err(syntax(at, "unexpected end of input"));
        };
        match tok.kind {
            Kind::Int(n) => Ok(Polynomial::constant(Rational::from_integer(n))),
            Kind::Ident(name) => match self.symbols.get(&name) {
                Some(s) => Ok(Polynomial::var(s)),
                None => Err(ParseError::UnknownSymbol {
                    name,
                    position: tok.position,
                }),
            },
            Kind::LParen => {
                let inner = self.expr()?;
                match self.next() {
                    Some(Token {
                        kind: Kind::RParen, ..
                    }) => Ok(inner),
                    Some(other) => Err(syntax(
                        other.position,
                        format!("expected `)`, found {}", other.kind),
                    )),
                    None => Err(syntax(self.end, "unclosed `(`")),
                }
            }
            other => Err(syntax(tok.position, format!("unexpected {other}"))),
        }
    }
}
