use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{format_rational, int, Rational};

/// Square matrix of rationals, row-major. As an endomorphism, column `j`
/// holds the components of the image of basis vector `j`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    n: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(n: usize) -> Self {
        Matrix {
            n,
            data: vec![Rational::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn diagonal(entries: &[Rational]) -> Self {
        let mut m = Matrix::zeros(entries.len());
        for (i, e) in entries.iter().enumerate() {
            m.set(i, i, e.clone());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Shape(format!("matrix rows must all have length {n}")));
        }
        Ok(Matrix {
            n,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|x| int(*x)).collect())
                .collect(),
        )
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Matrix { n, data }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.n + j] = v;
    }

    pub fn rows(&self) -> Vec<Vec<Rational>> {
        self.data.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.n, |i, j| self.get(j, i).clone())
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        Matrix::from_fn(self.n, |i, j| {
            (0..self.n)
                .map(|k| self.get(i, k) * other.get(k, j))
                .fold(Rational::zero(), |a, b| a + b)
        })
    }

    /// Image of a component vector.
    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        (0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|j| self.get(i, j) * &v[j])
                    .fold(Rational::zero(), |a, b| a + b)
            })
            .collect()
    }

    /// Exact inverse by fraction-free Gauss–Jordan elimination on `[A | I]`.
    pub fn inverse(&self) -> Result<Matrix> {
        let n = self.n;
        let w = 2 * n;
        let mut m: Vec<Vec<Rational>> = (0..n)
            .map(|i| {
                let mut row = self.data[i * n..(i + 1) * n].to_vec();
                row.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
                row
            })
            .collect();
        let mut prev = Rational::one();
        for k in 0..n {
            let p = (k..n).find(|&r| !m[r][k].is_zero()).ok_or(Error::SingularMatrix)?;
            m.swap(k, p);
            for i in 0..n {
                if i == k {
                    continue;
                }
                for j in 0..w {
                    if j == k {
                        continue;
                    }
                    let v = (&m[k][k] * &m[i][j] - &m[i][k] * &m[k][j]) / &prev;
                    m[i][j] = v;
                }
                m[i][k] = Rational::zero();
            }
            prev = m[k][k].clone();
        }
        Ok(Matrix::from_fn(n, |i, j| &m[i][n + j] / &m[i][i]))
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        rank_of_rows(self.rows())
    }
}

/// Rank of an arbitrary (possibly non-square) rational row list.
pub fn rank_of_rows(mut rows: Vec<Vec<Rational>>) -> usize {
    let cols = rows.first().map(Vec::len).unwrap_or(0);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank][c].clone();
        for r in 0..rows.len() {
            if r != rank && !rows[r][c].is_zero() {
                let f = &rows[r][c] / &pivot;
                for k in c..cols {
                    let v = &rows[rank][k] * &f;
                    rows[r][k] -= v;
                }
            }
        }
        rank += 1;
    }
    rank
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = self
            .rows()
            .iter()
            .map(|r| r.iter().map(format_rational).collect())
            .collect();
        write!(f, "{rows:?}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn inverse_examples() {
        let g = Matrix::from_i64(&[
            &[1, 0, 0, 0, 0],
            &[0, 1, 0, 0, 0],
            &[0, 0, -1, 0, 0],
            &[0, 0, 0, -1, 0],
            &[0, 0, 0, 0, 1],
        ])
        .unwrap();
        assert_eq!(g.inverse().unwrap(), g);
        assert_eq!(Matrix::identity(3).inverse().unwrap(), Matrix::identity(3));
        let swap = Matrix::from_i64(&[&[0, 1], &[1, 0]]).unwrap();
        assert_eq!(swap.inverse().unwrap(), swap);
    }

    #[test]
    fn inverse_general() {
        let a = Matrix::from_i64(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]).unwrap();
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Matrix::identity(3));
        assert_eq!(inv.get(0, 0), &rat(11, 18));
    }

    #[test]
    fn singular_is_rejected() {
        let a = Matrix::from_i64(&[&[1, 2], &[2, 4]]).unwrap();
        assert_eq!(a.inverse(), Err(Error::SingularMatrix));
        assert_eq!(a.rank(), 1);
    }
}
