use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

/// Parameters with a fixed position in the monomial order. Any other
/// variable sorts after these, by name.
pub const KNOWN_PARAMETERS: [&str; 8] = [
    "lambda1", "lambda2", "lambda3", "lambda4", "mu1", "mu2", "mu3", "mu4",
];

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var {
    rank: u8,
    name: Arc<str>,
}

impl Var {
    pub fn new(name: &str) -> Self {
        let rank = KNOWN_PARAMETERS
            .iter()
            .position(|k| *k == name)
            .unwrap_or(KNOWN_PARAMETERS.len()) as u8;
        Var {
            rank,
            name: Arc::from(name),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

/// Power product stored sparsely as `(variable, exponent)` pairs sorted by
/// variable, exponents strictly positive.
///
/// Ordering is lexicographic on the dense exponent vector over the variable
/// order, so `lambda1` dominates everything without `lambda1`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Var) -> Self {
        Monomial(vec![(v, 1)])
    }

    /// Builds from arbitrary pairs, merging repeats and dropping zero exponents.
    pub fn from_pairs<I: IntoIterator<Item = (Var, u32)>>(pairs: I) -> Self {
        let mut v: Vec<(Var, u32)> = pairs.into_iter().filter(|(_, e)| *e > 0).collect();
        v.sort_by(|a, b| a.0.cmp(&b.0));
        let mut out: Vec<(Var, u32)> = Vec::with_capacity(v.len());
        for (var, e) in v {
            match out.last_mut() {
                Some((last, acc)) if *last == var => *acc += e,
                _ => out.push((var, e)),
            }
        }
        Monomial(out)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn exponent(&self, var: &Var) -> u32 {
        self.0
            .iter()
            .find(|(v, _)| v == var)
            .map(|(_, e)| *e)
            .unwrap_or(0)
    }

    pub fn factors(&self) -> &[(Var, u32)] {
        &self.0
    }

    /// The monomial with `var` removed entirely.
    pub fn without(&self, var: &Var) -> Monomial {
        Monomial(self.0.iter().filter(|(v, _)| v != var).cloned().collect())
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0.clone(), a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (0, 0);
        loop {
            match (a.get(i), b.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some((va, ea)), Some((vb, eb))) => match va.cmp(vb) {
                    // `a` carries a positive exponent where `b` has none
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => {
                        if ea != eb {
                            return ea.cmp(eb);
                        }
                        i += 1;
                        j += 1;
                    }
                },
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (k, (v, e)) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(pairs: &[(&str, u32)]) -> Monomial {
        Monomial::from_pairs(pairs.iter().map(|(n, e)| (Var::new(n), *e)))
    }

    #[test]
    fn known_parameters_come_first() {
        assert!(Var::new("lambda4") < Var::new("mu1"));
        assert!(Var::new("mu4") < Var::new("a"));
        assert!(Var::new("a") < Var::new("b"));
    }

    #[test]
    fn lex_order() {
        assert!(m(&[("lambda1", 1)]) > m(&[("lambda2", 5)]));
        assert!(m(&[("lambda1", 2)]) > m(&[("lambda1", 1), ("mu1", 3)]));
        assert!(m(&[("lambda1", 1), ("mu1", 1)]) > m(&[("lambda1", 1)]));
        assert!(m(&[]) < m(&[("mu4", 1)]));
    }

    #[test]
    fn product_merges_exponents() {
        let p = m(&[("lambda1", 1), ("mu3", 2)]).mul(&m(&[("lambda2", 1), ("mu3", 1)]));
        assert_eq!(p, m(&[("lambda1", 1), ("lambda2", 1), ("mu3", 3)]));
        assert_eq!(p.degree(), 5);
        assert_eq!(p.to_string(), "lambda1*lambda2*mu3^3");
    }
}
