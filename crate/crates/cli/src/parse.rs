//! Recursive-descent parser for polynomial expressions.
//!
//! ```text
//! expr     := term (("+" | "-") term)*
//! term     := ["-"] factor ("*" factor)*
//! factor   := base ("^" nonneg-integer)?
//! base     := rational | variable | "(" expr ")"
//! rational := integer ("/" positive-integer)?
//! variable := [a-z][A-Za-z0-9]*
//! ```
//!
//! There is no implicit multiplication. Positions are 1-based character
//! columns.

use std::fmt;

use algder::rational::Rational;
use algder::{Poly, Ring};
use num_bigint::BigInt;
use num_traits::Zero;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnexpectedChar(char),
    UnexpectedToken { found: String, expected: &'static str },
    UnexpectedEnd { expected: &'static str },
    UnknownVariable(String),
    NegativeExponent,
    ExponentTooLarge,
    ZeroDenominator,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub column: usize,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "column {}: ", self.column)?;
        match &self.kind {
            ParseErrorKind::UnexpectedChar(c) => write!(f, "unexpected character `{c}`"),
            ParseErrorKind::UnexpectedToken { found, expected } => write!(f, "expected {expected}, found `{found}`"),
            ParseErrorKind::UnexpectedEnd { expected } => write!(f, "expected {expected}, found end of input"),
            ParseErrorKind::UnknownVariable(v) => write!(f, "unknown variable `{v}`"),
            ParseErrorKind::NegativeExponent => write!(f, "negative exponent"),
            ParseErrorKind::ExponentTooLarge => write!(f, "exponent too large"),
            ParseErrorKind::ZeroDenominator => write!(f, "zero denominator"),
        }
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Int(n) => write!(f, "{n}"),
            Tok::Ident(s) => f.write_str(s),
            Tok::Sym(c) => write!(f, "{c}"),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let column = i + 1;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            out.push((column, Tok::Int(digits.parse().expect("ascii digits"))));
        } else if c.is_ascii_lowercase() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                i += 1;
            }
            out.push((column, Tok::Ident(chars[start..i].iter().collect())));
        } else if "+-*/^()".contains(c) {
            out.push((column, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(ParseError { column, kind: ParseErrorKind::UnexpectedChar(c) });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end_column: usize,
    ring: &'a Ring,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn column(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_column, |(c, _)| *c)
    }

    fn eat(&mut self, sym: char) -> bool {
        if self.peek() == Some(&Tok::Sym(sym)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn unexpected(&self, expected: &'static str) -> ParseError {
        let kind = match self.peek() {
            Some(t) => ParseErrorKind::UnexpectedToken { found: t.to_string(), expected },
            None => ParseErrorKind::UnexpectedEnd { expected },
        };
        ParseError { column: self.column(), kind }
    }

    fn expr(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Poly, ParseError> {
        let negate = self.eat('-');
        let mut acc = self.factor()?;
        while self.eat('*') {
            acc = &acc * &self.factor()?;
        }
        Ok(if negate { -&acc } else { acc })
    }

    fn factor(&mut self) -> Result<Poly, ParseError> {
        let base = self.base()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let column = self.column();
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                let e: u32 = n.try_into().map_err(|_| ParseError { column, kind: ParseErrorKind::ExponentTooLarge })?;
                Ok(base.pow(e))
            }
            Some(Tok::Sym('-')) => Err(ParseError { column, kind: ParseErrorKind::NegativeExponent }),
            _ => Err(self.unexpected("a nonnegative integer exponent")),
        }
    }

    fn base(&mut self) -> Result<Poly, ParseError> {
        let column = self.column();
        match self.peek().cloned() {
            Some(Tok::Int(num)) => {
                self.pos += 1;
                let mut q = Rational::from_integer(num);
                if self.eat('/') {
                    let column = self.column();
                    match self.peek().cloned() {
                        Some(Tok::Int(den)) if den.is_zero() => {
                            return Err(ParseError { column, kind: ParseErrorKind::ZeroDenominator })
                        }
                        Some(Tok::Int(den)) => {
                            self.pos += 1;
                            q /= Rational::from_integer(den);
                        }
                        _ => return Err(self.unexpected("a positive integer denominator")),
                    }
                }
                Ok(Poly::constant(self.ring, q))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                self.ring
                    .index_of(&name)
                    .map(|i| Poly::var_at(self.ring, i))
                    .ok_or(ParseError { column, kind: ParseErrorKind::UnknownVariable(name) })
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(self.unexpected("`)`"));
                }
                Ok(inner)
            }
            _ => Err(self.unexpected("a number, variable or `(`")),
        }
    }
}

pub fn parse_poly(text: &str, ring: &Ring) -> Result<Poly, ParseError> {
    let toks = lex(text)?;
    let mut parser = Parser { toks, pos: 0, end_column: text.chars().count() + 1, ring };
    let p = parser.expr()?;
    if parser.peek().is_some() {
        return Err(parser.unexpected("an operator or end of input"));
    }
    Ok(p)
}

/// Canonical text: descending graded-lex terms, explicit `*` and `^`.
pub fn format_poly(p: &Poly) -> String {
    p.to_string()
}

/// True for names the grammar accepts as variables.
pub fn is_variable_name(name: &str) -> bool {
    let mut chars = name.chars();
    chars.next().is_some_and(|c| c.is_ascii_lowercase()) && chars.all(|c| c.is_ascii_alphanumeric())
}

#[cfg(test)]
mod tests {
    use super::*;
    use algder::rational::{int, ratio};
    use algder::Monomial;

    fn xy() -> Ring {
        Ring::new(&["x", "y"])
    }

    fn mono(c: Rational, e: &[u32]) -> Poly {
        Poly::monomial(&xy(), Monomial::new(e.to_vec()), c)
    }

    #[test]
    fn parses_examples() {
        let p = parse_poly("x^2*y + 3/2*y^3", &xy()).unwrap();
        assert_eq!(p, &mono(int(1), &[2, 1]) + &mono(ratio(3, 2), &[0, 3]));
        let sq = parse_poly("(x+y)^2", &xy()).unwrap();
        assert_eq!(format_poly(&sq), "x^2 + 2*x*y + y^2");
        assert_eq!(parse_poly("-x - 1/2", &xy()).unwrap().to_string(), "-x - 1/2");
        assert_eq!(parse_poly("x - -y", &xy()).unwrap(), &mono(int(1), &[1, 0]) + &mono(int(1), &[0, 1]));
        assert_eq!(parse_poly("x^0", &xy()).unwrap(), Poly::one(&xy()));
        assert_eq!(parse_poly(" 0 ", &xy()).unwrap(), Poly::zero(&xy()));
    }

    #[test]
    fn rejects_with_positions() {
        let err = parse_poly("x^-1", &xy()).unwrap_err();
        assert_eq!(err, ParseError { column: 3, kind: ParseErrorKind::NegativeExponent });
        let err = parse_poly("x + z", &xy()).unwrap_err();
        assert_eq!(err, ParseError { column: 5, kind: ParseErrorKind::UnknownVariable("z".into()) });
        let err = parse_poly("2x", &xy()).unwrap_err();
        assert_eq!(err.column, 2);
        assert!(matches!(err.kind, ParseErrorKind::UnexpectedToken { .. }));
        assert_eq!(parse_poly("x y", &xy()).unwrap_err().column, 3);
        assert_eq!(parse_poly("(x", &xy()).unwrap_err().kind, ParseErrorKind::UnexpectedEnd { expected: "`)`" });
        assert_eq!(parse_poly("1/0", &xy()).unwrap_err().kind, ParseErrorKind::ZeroDenominator);
        assert_eq!(parse_poly("x/2", &xy()).unwrap_err().column, 2);
        assert_eq!(parse_poly("1.5", &xy()).unwrap_err().kind, ParseErrorKind::UnexpectedChar('.'));
        assert_eq!(parse_poly("", &xy()).unwrap_err().column, 1);
        assert_eq!(parse_poly("X", &xy()).unwrap_err().kind, ParseErrorKind::UnexpectedChar('X'));
        assert_eq!(parse_poly("x^99999999999", &xy()).unwrap_err().kind, ParseErrorKind::ExponentTooLarge);
    }

    #[test]
    fn error_messages_are_single_line() {
        let err = parse_poly("x^-1", &xy()).unwrap_err();
        assert_eq!(err.to_string(), "column 3: negative exponent");
    }

    #[test]
    fn variable_names() {
        assert!(is_variable_name("x1"));
        assert!(is_variable_name("aB"));
        assert!(!is_variable_name("1x"));
        assert!(!is_variable_name("X"));
        assert!(!is_variable_name(""));
    }
}
