//! Exact scalars.
//!
//! Every number in the engine is a [`Polynomial`] with rational coefficients;
//! a plain rational is the constant polynomial. Identity checks therefore
//! reduce to [`Polynomial::is_zero`], which is a structural test on the
//! canonical term map.

mod expr;
mod monomial;
mod poly;

pub use expr::{parse_expr, parse_expr_with};
pub use monomial::{Monomial, Var, KNOWN_PARAMETERS};
pub use poly::{Assignment, Polynomial};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational in lowest terms with a positive denominator.
pub type Rational = num_rational::BigRational;

/// The single number type used by tensors, connections and curvature.
pub type Scalar = Polynomial;

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Renders `p` or `p/q`.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p`, `-p` or `p/q` with integer `p`, `q`; `q` must be nonzero.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let bad = |message: &str| Error::Parse {
        line: 1,
        column: 1,
        message: format!("{message}: `{text}`"),
    };
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad("invalid rational numerator"))?;
    let den: BigInt = den.parse().map_err(|_| bad("invalid rational denominator"))?;
    if den.is_zero() {
        return Err(bad("zero denominator"));
    }
    Ok(Rational::new(num, den))
}

pub(crate) fn rational_is_negative(r: &Rational) -> bool {
    r.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_are_canonical() {
        let r = rat(6, -4);
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
        assert_eq!(format_rational(&r), "-3/2");
        assert_eq!(format_rational(&int(7)), "7");
    }

    #[test]
    fn parse_rational_forms() {
        assert_eq!(parse_rational("3/6").unwrap(), rat(1, 2));
        assert_eq!(parse_rational(" -4 ").unwrap(), int(-4));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }
}
