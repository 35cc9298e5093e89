use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Zero};

use super::monomial::{Monomial, Var};
use super::{format_rational, rational_is_negative, Rational};
use crate::error::{Error, Result};

/// Values for named parameters, used by [`Polynomial::evaluate`].
pub type Assignment = BTreeMap<String, Rational>;

/// Multivariate polynomial over the rationals in canonical form: no stored
/// term has a zero coefficient, so structural equality is value equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn one() -> Self {
        Polynomial::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        Polynomial { terms }
    }

    pub fn int(n: i64) -> Self {
        Polynomial::constant(super::int(n))
    }

    pub fn var(name: &str) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::var(Var::new(name)), Rational::one());
        Polynomial { terms }
    }

    /// Collects `(monomial, coefficient)` pairs into canonical form, summing
    /// repeated monomials and discarding zeros.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(terms: I) -> Self {
        let mut out = Polynomial::zero();
        for (m, c) in terms {
            out.add_term(m, c);
        }
        out
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// The value if `self` has no variables.
    pub fn as_constant(&self) -> Option<Rational> {
        if self.is_zero() {
            return Some(Rational::zero());
        }
        if self.is_constant() {
            return self.terms.values().next().cloned();
        }
        None
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn variables(&self) -> BTreeSet<Var> {
        self.terms
            .keys()
            .flat_map(|m| m.factors().iter().map(|(v, _)| v.clone()))
            .collect()
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Exact substitution of every variable. Fails on the first variable (in
    /// variable order) without a value.
    pub fn evaluate(&self, assignment: &Assignment) -> Result<Rational> {
        if let Some(v) = self.variables().into_iter().find(|v| !assignment.contains_key(v.name())) {
            return Err(Error::UnboundVariable(v.name().to_string()));
        }
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut value = c.clone();
            for (v, e) in m.factors() {
                let x = &assignment[v.name()];
                value *= num_traits::pow(x.clone(), *e as usize);
            }
            total += value;
        }
        Ok(total)
    }

    /// Replaces the named variables by polynomials; other variables are kept.
    pub fn substitute(&self, subs: &BTreeMap<String, Polynomial>) -> Polynomial {
        if subs.is_empty() {
            return self.clone();
        }
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let mut kept = Vec::new();
            let mut factor = Polynomial::constant(c.clone());
            for (v, e) in m.factors() {
                match subs.get(v.name()) {
                    Some(p) => factor = &factor * &p.pow(*e),
                    None => kept.push((v.clone(), *e)),
                }
            }
            let kept = Polynomial {
                terms: BTreeMap::from([(Monomial::from_pairs(kept), Rational::one())]),
            };
            out += &(&factor * &kept);
        }
        out
    }

    /// Partial substitution by rational values.
    pub fn substitute_values(&self, assignment: &Assignment) -> Polynomial {
        let subs = assignment
            .iter()
            .map(|(k, v)| (k.clone(), Polynomial::constant(v.clone())))
            .collect();
        self.substitute(&subs)
    }

    /// Splits `self = a·var + b` when `self` has degree at most one in `var`.
    pub fn linear_in(&self, var: &str) -> Option<(Polynomial, Polynomial)> {
        let v = Var::new(var);
        let mut a = Polynomial::zero();
        let mut b = Polynomial::zero();
        for (m, c) in &self.terms {
            match m.exponent(&v) {
                0 => b.add_term(m.clone(), c.clone()),
                1 => a.add_term(m.without(&v), c.clone()),
                _ => return None,
            }
        }
        Some((a, b))
    }

    /// Solves `self = 0` for `var`, provided `self` is affine in `var` with a
    /// nonzero constant leading coefficient.
    pub fn solve_linear_for(&self, var: &str) -> Option<Polynomial> {
        let (a, b) = self.linear_in(var)?;
        let a = a.as_constant()?;
        if a.is_zero() {
            return None;
        }
        Some((-b).scale(&(Rational::one() / a)))
    }

    /// Returns `c` with `self = c·other`, if such a rational exists and
    /// `other` is nonzero.
    pub fn ratio_to(&self, other: &Polynomial) -> Option<Rational> {
        let (m, c) = other.terms.iter().next_back()?;
        let k = self.terms.get(m).cloned().unwrap_or_else(Rational::zero) / c;
        if (self - &other.scale(&k)).is_zero() {
            Some(k)
        } else {
            None
        }
    }
}

impl From<Rational> for Polynomial {
    fn from(c: Rational) -> Self {
        Polynomial::constant(c)
    }
}

impl From<i64> for Polynomial {
    fn from(n: i64) -> Self {
        Polynomial::int(n)
    }
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(mut self, rhs: Polynomial) -> Polynomial {
        self += &rhs;
        self
    }
}

impl AddAssign<&Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &Polynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl AddAssign for Polynomial {
    fn add_assign(&mut self, rhs: Polynomial) {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(mut self, rhs: Polynomial) -> Polynomial {
        self -= &rhs;
        self
    }
}

impl SubAssign<&Polynomial> for Polynomial {
    fn sub_assign(&mut self, rhs: &Polynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        if self.is_zero() || rhs.is_zero() {
            return out;
        }
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl std::iter::Sum for Polynomial {
    fn sum<I: Iterator<Item = Polynomial>>(iter: I) -> Polynomial {
        let mut acc = Polynomial::zero();
        for p in iter {
            acc += p;
        }
        acc
    }
}

/// Canonical rendering: terms in descending monomial order, explicit
/// rational coefficients, unit coefficients elided, e.g.
/// `-lambda1^2 + 1/2*lambda2*mu1 - 3`.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = rational_is_negative(c);
            let magnitude = if negative { -c.clone() } else { c.clone() };
            match (k, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                f.write_str(&format_rational(&magnitude))?;
            } else if magnitude.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", format_rational(&magnitude))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, parse_expr, rat};

    fn p(s: &str) -> Polynomial {
        parse_expr(s).unwrap()
    }

    #[test]
    fn ring_examples() {
        assert_eq!(&p("lambda1 + 1") * &p("lambda1 - 1"), p("lambda1^2 - 1"));
        assert_eq!(&p("lambda2 + mu1") + &Polynomial::zero(), p("lambda2 + mu1"));
        assert_eq!(
            p("lambda2 + mu1").pow(2),
            p("lambda2^2 + 2*lambda2*mu1 + mu1^2")
        );
    }

    #[test]
    fn zero_tests() {
        assert!(Polynomial::zero().is_zero());
        assert!((&p("lambda1") - &p("lambda1")).is_zero());
        assert!(!p("lambda1").is_zero());
    }

    #[test]
    fn evaluate_examples() {
        let a: Assignment = [("lambda1", int(1)), ("lambda3", int(0))]
            .into_iter()
            .map(|(k, v)| (k.to_string(), v))
            .collect();
        assert_eq!(p("lambda3^2 - lambda1^2").evaluate(&a).unwrap(), int(-1));
        assert_eq!(
            Polynomial::constant(rat(3, 7))
                .evaluate(&Assignment::new())
                .unwrap(),
            rat(3, 7)
        );
    }

    #[test]
    fn evaluate_closed_form_associated_scalar() {
        let tau_star = p("8*lambda1*lambda3 + 2*(lambda2 + mu1)*(lambda4 + mu3)");
        let mut a = Assignment::new();
        for name in ["lambda2", "lambda4", "mu1", "mu3"] {
            a.insert(name.into(), int(0));
        }
        a.insert("lambda1".into(), int(1));
        a.insert("lambda3".into(), int(1));
        assert_eq!(tau_star.evaluate(&a).unwrap(), int(8));
    }

    #[test]
    fn unbound_variable_is_named() {
        let err = p("lambda1 + mu3").evaluate(&Assignment::new()).unwrap_err();
        assert_eq!(err, Error::UnboundVariable("lambda1".into()));
    }

    #[test]
    fn rendering_is_canonical() {
        assert_eq!(
            p("mu1/2 - 3 + 3/4*lambda2^2 - lambda1^2").to_string(),
            "-lambda1^2 + 3/4*lambda2^2 + 1/2*mu1 - 3"
        );
        assert_eq!(Polynomial::zero().to_string(), "0");
        assert_eq!(p("-x*lambda1").to_string(), "-lambda1*x");
    }

    #[test]
    fn solve_and_ratio() {
        let s = p("2*lambda1 + 2*mu2").solve_linear_for("mu2").unwrap();
        assert_eq!(s, p("-lambda1"));
        assert!(p("mu2^2 + 1").solve_linear_for("mu2").is_none());
        assert!(p("lambda1*mu2 + 1").solve_linear_for("mu2").is_none());
        assert_eq!(
            p("-4*lambda1^2 + 2*mu3").ratio_to(&p("2*lambda1^2 - mu3")),
            Some(int(-2))
        );
        assert_eq!(p("lambda1").ratio_to(&p("lambda2")), None);
        assert_eq!(Polynomial::zero().ratio_to(&p("lambda2")), Some(int(0)));
        assert_eq!(p("lambda1").ratio_to(&Polynomial::zero()), None);
    }

    #[test]
    fn substitution() {
        let mut subs = BTreeMap::new();
        subs.insert("mu2".to_string(), p("-lambda1"));
        assert!(p("2*(lambda1 + mu2)").substitute(&subs).is_zero());
        assert_eq!(p("mu2^2*x").substitute(&subs), p("lambda1^2*x"));
    }
}
