//! Surface syntax for polynomials.
//!
//! ```text
//! expr     := ['+' | '-'] term (('+' | '-') term)*
//! term     := rational ['*'? factor ('*' factor)*] | factor ('*' factor)*
//! factor   := primary ('^' nat)*
//! primary  := 'x' nat | 'y' | '[' expr ',' expr ']' | '(' expr ')'
//! rational := int ('/' nat)?
//! ```
//!
//! Whitespace is ignored. Brackets expand to commutators. Formatting prints
//! terms in canonical order as `p/q*x1*x2`, the unit word as `1`.

use std::fmt;

use num::{BigInt, One, Signed, Zero};
use thiserror::Error;

use crate::ncalg::{Letter, Poly, Scalar, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error(
        "syntax error at position {position}: expected one of {}",
        quote_all(expected)
    )]
    Syntax {
        position: usize,
        expected: Vec<&'static str>,
    },
    #[error("generator index 0 at position {position} (generators start at x1)")]
    ZeroGenerator { position: usize },
    #[error("unbalanced `{bracket}` at position {position}")]
    Unbalanced { position: usize, bracket: char },
    #[error("zero denominator at position {position}")]
    ZeroDenominator { position: usize },
    #[error("generator x{index} exceeds arity {arity}")]
    ArityExceeded { index: u32, arity: usize },
}

impl ParseError {
    pub fn position(&self) -> Option<usize> {
        match self {
            ParseError::Syntax { position, .. }
            | ParseError::ZeroGenerator { position }
            | ParseError::Unbalanced { position, .. }
            | ParseError::ZeroDenominator { position } => Some(*position),
            ParseError::ArityExceeded { .. } => None,
        }
    }
}

fn quote_all(tokens: &[&'static str]) -> String {
    tokens
        .iter()
        .map(|t| format!("`{t}`"))
        .collect::<Vec<_>>()
        .join(", ")
}

const CONTINUE: [&str; 4] = ["+", "-", "*", "^"];
const FACTOR_START: [&str; 4] = ["x<n>", "y", "[", "("];

// provisional arity while parsing; fixed once the largest index is known
const OPEN_ARITY: usize = u32::MAX as usize;

/// Parses `text`. With `arity = None` the result has the arity of the largest
/// generator index used.
pub fn parse(text: &str, arity: Option<usize>) -> Result<Poly, ParseError> {
    let mut parser = Parser {
        chars: text.chars().collect(),
        pos: 0,
        max_index: 0,
    };
    let poly = parser.expr()?;
    parser.skip_ws();
    if let Some(c) = parser.peek() {
        if c == ')' || c == ']' {
            return Err(ParseError::Unbalanced {
                position: parser.pos,
                bracket: c,
            });
        }
        let mut expected = CONTINUE.to_vec();
        expected.push("end of input");
        return Err(ParseError::Syntax {
            position: parser.pos,
            expected,
        });
    }
    let target = arity.unwrap_or(parser.max_index as usize);
    if parser.max_index as usize > target {
        return Err(ParseError::ArityExceeded {
            index: parser.max_index,
            arity: target,
        });
    }
    Ok(poly.with_arity(target).expect("indices checked"))
}

/// Canonical text of `f`; identical to its `Display` output.
pub fn format(f: &Poly) -> String {
    f.to_string()
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
    max_index: u32,
}

impl Parser {
    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn error(&self, expected: &[&'static str]) -> ParseError {
        ParseError::Syntax {
            position: self.pos,
            expected: expected.to_vec(),
        }
    }

    fn digits(&mut self) -> Option<String> {
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| self.chars[start..self.pos].iter().collect())
    }

    fn expr(&mut self) -> Result<Poly, ParseError> {
        let negate_first = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        let mut acc = self.term()?;
        if negate_first {
            acc = -acc;
        }
        loop {
            if self.eat('+') {
                acc += &self.term()?;
            } else if self.eat('-') {
                acc -= &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn starts_factor(&mut self) -> bool {
        matches!(self.peek(), Some('x' | 'y' | '[' | '('))
    }

    fn term(&mut self) -> Result<Poly, ParseError> {
        let mut acc = match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let c = self.rational()?;
                let constant = Poly::constant(OPEN_ARITY, c);
                if self.eat('*') || self.starts_factor() {
                    &constant * &self.factor()?
                } else {
                    return Ok(constant);
                }
            }
            _ => self.factor()?,
        };
        while self.eat('*') {
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn rational(&mut self) -> Result<Scalar, ParseError> {
        let num: BigInt = self
            .digits()
            .expect("caller saw a digit")
            .parse()
            .expect("digits");
        if self.eat('/') {
            self.skip_ws();
            let at = self.pos;
            let den: BigInt = match self.digits() {
                Some(d) => d.parse().expect("digits"),
                None => return Err(self.error(&["<nat>"])),
            };
            if den.is_zero() {
                return Err(ParseError::ZeroDenominator { position: at });
            }
            return Ok(Scalar::new(num, den));
        }
        Ok(Scalar::from_integer(num))
    }

    fn factor(&mut self) -> Result<Poly, ParseError> {
        let mut base = self.primary()?;
        while self.eat('^') {
            self.skip_ws();
            let e: u32 = match self.digits() {
                Some(d) => d.parse().map_err(|_| self.error(&["<nat>"]))?,
                None => return Err(self.error(&["<nat>"])),
            };
            base = base.pow(e);
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Poly, ParseError> {
        match self.peek() {
            Some('x') => {
                self.pos += 1;
                let at = self.pos;
                let idx: u32 = match self.digits() {
                    Some(d) => d.parse().map_err(|_| ParseError::Syntax {
                        position: at,
                        expected: vec!["<nat>"],
                    })?,
                    None => return Err(self.error(&["<nat>"])),
                };
                if idx == 0 {
                    return Err(ParseError::ZeroGenerator { position: at - 1 });
                }
                self.max_index = self.max_index.max(idx);
                Ok(Poly::generator(OPEN_ARITY, idx).expect("open arity"))
            }
            Some('y') => {
                self.pos += 1;
                Ok(Poly::letter(OPEN_ARITY, Letter::y()).expect("param"))
            }
            Some('[') => {
                self.pos += 1;
                let a = self.expr()?;
                if !self.eat(',') {
                    return Err(self.error(&[",", "+", "-", "*", "^"]));
                }
                let b = self.expr()?;
                if !self.eat(']') {
                    return Err(self.error(&["]", "+", "-", "*", "^"]));
                }
                Ok(&(&a * &b) - &(&b * &a))
            }
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(self.error(&[")", "+", "-", "*", "^"]));
                }
                Ok(inner)
            }
            Some(c @ (')' | ']')) => Err(ParseError::Unbalanced {
                position: self.pos,
                bracket: c,
            }),
            _ => {
                let mut expected = FACTOR_START.to_vec();
                expected.push("<rational>");
                Err(self.error(&expected))
            }
        }
    }
}

fn write_word(f: &mut fmt::Formatter<'_>, w: &Word) -> fmt::Result {
    write!(f, "{w}")
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.terms().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let abs = c.abs();
            if w.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write_word(f, w)?;
            } else {
                write!(f, "{abs}*")?;
                write_word(f, w)?;
            }
        }
        Ok(())
    }
}
