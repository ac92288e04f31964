//! Expression parser producing canonical [`RationalFunction`]s.
//!
//! Grammar (whitespace is ignored between tokens):
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := factor (('*' | '/') factor)*
//! factor  := ('+' | '-') factor | power
//! power   := primary ('^' UINT)?
//! primary := NUMBER | IDENT | '(' expr ')'
//! NUMBER  := DIGITS ('.' DIGITS)?          (decimals are read exactly)
//! IDENT   := [A-Za-z_][A-Za-z0-9_]*        (must be a declared variable)
//! ```
//!
//! Exponents are non-negative integer literals.  `-x^2` parses as `-(x^2)`.

use std::fmt;

use num::{BigInt, Zero};
use thiserror::Error;

use super::ratfunc::RationalFunction;
use super::rational::{parse_rational, Rational};

/// An ordered list of variable names; index `i` is variable `x_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vars(pub Vec<String>);

impl Vars {
    /// Build from string slices.
    pub fn new<S: AsRef<str>>(names: &[S]) -> Self {
        Vars(names.iter().map(|s| s.as_ref().to_string()).collect())
    }

    /// The default base coordinates `x1..x5`.
    pub fn base5() -> Self {
        Vars((1..=5).map(|i| format!("x{i}")).collect())
    }

    /// Number of variables.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// `true` when there are no variables.
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Index of a name.
    pub fn index(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }
}

/// What went wrong while parsing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    /// Malformed input; the message names the expected token.
    Syntax(String),
    /// An identifier that is not in the variable list.
    UnknownVariable(String),
    /// Division by an expression that simplifies to zero.
    DivisionByZero,
}

/// A parse failure at a byte offset of the input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ParseError {
    /// Byte offset (0-based) where the problem was detected.
    pub pos: usize,
    /// Error category.
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ParseErrorKind::Syntax(m) => write!(f, "syntax error at position {}: {m}", self.pos),
            ParseErrorKind::UnknownVariable(v) => write!(f, "unknown variable '{v}' at position {}", self.pos),
            ParseErrorKind::DivisionByZero => write!(f, "division by zero at position {}", self.pos),
        }
    }
}

/// Parse `text` over the variables `vars` into a canonical rational function.
pub fn parse_expression(text: &str, vars: &Vars) -> Result<RationalFunction, ParseError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, vars };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.err(format!("unexpected '{}'", p.src[p.pos] as char)));
    }
    Ok(v)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    vars: &'a Vars,
}

impl Parser<'_> {
    fn n(&self) -> usize {
        self.vars.len()
    }

    fn err(&self, msg: String) -> ParseError {
        ParseError { pos: self.pos, kind: ParseErrorKind::Syntax(msg) }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<RationalFunction, ParseError> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                b'+' => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                b'-' => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RationalFunction, ParseError> {
        let mut acc = self.factor()?;
        while let Some(c) = self.peek() {
            match c {
                b'*' => {
                    self.pos += 1;
                    acc = &acc * &self.factor()?;
                }
                b'/' => {
                    self.pos += 1;
                    let at = self.pos;
                    let d = self.factor()?;
                    acc = acc.div_ref(&d).map_err(|_| ParseError { pos: at, kind: ParseErrorKind::DivisionByZero })?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<RationalFunction, ParseError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.factor()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.factor()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<RationalFunction, ParseError> {
        let base = self.primary()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if start == self.pos {
                return Err(self.err("expected a non-negative integer exponent".into()));
            }
            let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
            let e: u32 = text.parse().map_err(|_| ParseError { pos: start, kind: ParseErrorKind::Syntax("exponent too large".into()) })?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<RationalFunction, ParseError> {
        match self.peek() {
            None => Err(self.err("unexpected end of input".into())),
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'".into()));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => {
                let start = self.pos;
                while self.pos < self.src.len() && (self.src[self.pos].is_ascii_digit() || self.src[self.pos] == b'.') {
                    self.pos += 1;
                }
                let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let r: Rational = if text.contains('.') {
                    parse_rational(text).ok_or(ParseError { pos: start, kind: ParseErrorKind::Syntax(format!("bad number '{text}'")) })?
                } else {
                    Rational::from_integer(text.parse::<BigInt>().unwrap_or_else(|_| BigInt::zero()))
                };
                Ok(RationalFunction::constant(self.n(), r))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                match self.vars.index(name) {
                    Some(i) => Ok(RationalFunction::var(self.n(), i)),
                    None => Err(ParseError { pos: start, kind: ParseErrorKind::UnknownVariable(name.to_string()) }),
                }
            }
            Some(c) => Err(self.err(format!("unexpected '{}'", c as char))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::rational::{int, rat};
    use super::*;

    fn v() -> Vars {
        Vars::base5()
    }

    #[test]
    fn direct_denotation() {
        let f = parse_expression("x1^2/(1+x3)", &v()).unwrap();
        assert_eq!(f.numer(), &parse_expression("x1^2", &v()).unwrap().numer().clone());
        assert_eq!(f.denom(), parse_expression("1+x3", &v()).unwrap().numer().clone());
    }

    #[test]
    fn annihilation_and_normalization() {
        assert!(parse_expression("0*(x2+1)", &v()).unwrap().is_zero());
        assert_eq!(parse_expression("(x1+x1)", &v()).unwrap(), RationalFunction::var(5, 0).scale_ref(&int(2)));
    }

    #[test]
    fn precedence_and_unary_minus() {
        let f = parse_expression("-x1^2 + 3/4*x2 - (x3)", &v()).unwrap();
        let pt = [int(2), int(4), int(1), int(0), int(0)];
        assert_eq!(f.eval(&pt).unwrap(), int(-4 + 3 - 1));
        assert_eq!(parse_expression("1.5", &v()).unwrap().as_constant(), Some(rat(3, 2)));
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_expression("x1 + y", &v()).unwrap_err();
        assert_eq!(e.pos, 5);
        assert!(matches!(e.kind, ParseErrorKind::UnknownVariable(_)));
        let e = parse_expression("x1 / (x2 - x2)", &v()).unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::DivisionByZero);
        let e = parse_expression("(x1 + 2", &v()).unwrap_err();
        assert_eq!(e.pos, 7);
        assert!(parse_expression("x1^-1", &v()).is_err());
    }
}
