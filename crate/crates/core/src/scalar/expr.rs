//! Parser for polynomial expressions such as `-1/2*(lambda2 + mu1)^2`.
//!
//! Grammar:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := ('+' | '-') unary | power
//! power  := atom ('^' integer)?
//! atom   := integer | identifier | '(' expr ')'
//! ```
//!
//! Division is only allowed by a nonzero constant.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{Polynomial, Rational};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
    line: usize,
    col0: usize,
    allowed: Option<&'a dyn Fn(&str) -> bool>,
}

/// Parses an expression in any variables.
pub fn parse_expr(text: &str) -> Result<Polynomial> {
    parse_expr_with(text, 1, 1, None)
}

/// Parses an expression reporting errors at `line` and columns offset from
/// `col0`; identifiers must satisfy `allowed` when given.
pub fn parse_expr_with(
    text: &str,
    line: usize,
    col0: usize,
    allowed: Option<&dyn Fn(&str) -> bool>,
) -> Result<Polynomial> {
    let toks = lex(text, line, col0)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: text.chars().count(),
        line,
        col0,
        allowed,
    };
    let value = p.expr()?;
    if let Some((t, col)) = p.toks.get(p.pos) {
        return Err(p.error_at(*col, format!("unexpected token {t:?}")));
    }
    Ok(value)
}

fn lex(text: &str, line: usize, col0: usize) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push((Tok::Int(s.parse().expect("digits")), start));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), start));
        } else if "+-*/^()".contains(c) {
            out.push((Tok::Sym(c), i));
            i += 1;
        } else {
            return Err(Error::Parse {
                line,
                column: col0 + i,
                message: format!("unexpected character `{c}`"),
            });
        }
    }
    Ok(out)
}

impl Parser<'_> {
    fn error_at(&self, col: usize, message: String) -> Error {
        Error::Parse {
            line: self.line,
            column: self.col0 + col,
            message,
        }
    }

    fn peek_sym(&self) -> Option<char> {
        match self.toks.get(self.pos) {
            Some((Tok::Sym(c), _)) => Some(*c),
            _ => None,
        }
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map(|(_, c)| *c).unwrap_or(self.end)
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = self.term()?;
        while let Some(c @ ('+' | '-')) = self.peek_sym() {
            self.pos += 1;
            let rhs = self.term()?;
            if c == '+' {
                acc += rhs;
            } else {
                acc -= &rhs;
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.unary()?;
        while let Some(c @ ('*' | '/')) = self.peek_sym() {
            self.pos += 1;
            let col = self.col();
            let rhs = self.unary()?;
            if c == '*' {
                acc = &acc * &rhs;
            } else {
                let d = rhs
                    .as_constant()
                    .filter(|d| !d.is_zero())
                    .ok_or_else(|| {
                        self.error_at(col, "division only by a nonzero constant".into())
                    })?;
                acc = acc.scale(&(Rational::one() / d));
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Polynomial> {
        match self.peek_sym() {
            Some('-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some('+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.peek_sym() == Some('^') {
            self.pos += 1;
            let col = self.col();
            match self.toks.get(self.pos) {
                Some((Tok::Int(n), _)) => {
                    let e: u32 = n
                        .try_into()
                        .map_err(|_| self.error_at(col, "exponent too large".into()))?;
                    self.pos += 1;
                    return Ok(base.pow(e));
                }
                _ => return Err(self.error_at(col, "expected integer exponent".into())),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial> {
        let col = self.col();
        let tok = self.toks.get(self.pos).map(|(t, _)| t.clone());
        match tok {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(Polynomial::constant(Rational::from_integer(n)))
            }
            Some(Tok::Ident(name)) => {
                if let Some(ok) = self.allowed {
                    if !ok(&name) {
                        return Err(self.error_at(col, format!("undeclared parameter `{name}`")));
                    }
                }
                self.pos += 1;
                Ok(Polynomial::var(&name))
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek_sym() != Some(')') {
                    return Err(self.error_at(self.col(), "expected `)`".into()));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(t) => Err(self.error_at(col, format!("unexpected token {t:?}"))),
            None => Err(self.error_at(col, "unexpected end of expression".into())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn precedence() {
        let p = parse_expr("1 + 2*3^2 - -1").unwrap();
        assert_eq!(p.as_constant(), Some(rat(20, 1)));
        let q = parse_expr("-1/2*(lambda2 + mu1)").unwrap();
        assert_eq!(q.to_string(), "-1/2*lambda2 - 1/2*mu1");
    }

    #[test]
    fn errors_carry_columns() {
        match parse_expr_with("lambda1 + $", 3, 10, None) {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (3, 20)),
            other => panic!("{other:?}"),
        }
        assert!(parse_expr("lambda1/lambda2").is_err());
        assert!(parse_expr("(lambda1").is_err());
        assert!(parse_expr("lambda1 lambda2").is_err());
        assert!(parse_expr("").is_err());
    }

    #[test]
    fn undeclared_parameters_rejected() {
        let ok = |n: &str| n == "a";
        assert!(parse_expr_with("2*a", 1, 1, Some(&ok)).is_ok());
        assert!(parse_expr_with("2*b", 1, 1, Some(&ok)).is_err());
    }
}
