//! Dense, fully covariant tensors of rank 0 to 4 over a fixed frame.
//!
//! Indices are stored row-major: component `(i0, .., ir)` lives at
//! `i0·dim^(r-1) + .. + ir`. Raising happens only inside [`contract`], via the
//! exact inverse metric held in [`Metric`].

mod matrix;

pub use matrix::{rank_of_rows, Matrix};

use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::{Assignment, Polynomial, Rational, Scalar};

pub const MAX_RANK: usize = 4;

/// Basis `e1 .. e(2n), xi` of an odd-dimensional tangent space. The Reeb
/// vector is always the last basis element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Frame {
    labels: Vec<String>,
}

impl Frame {
    pub fn new(dim: usize) -> Result<Self> {
        let labels = (1..dim)
            .map(|i| format!("e{i}"))
            .chain(std::iter::once("xi".to_string()))
            .collect();
        Frame::with_labels(labels)
    }

    pub fn with_labels(labels: Vec<String>) -> Result<Self> {
        let dim = labels.len();
        if dim < 3 || dim % 2 == 0 {
            return Err(Error::Shape(format!(
                "frame dimension must be odd and at least 3, got {dim}"
            )));
        }
        Ok(Frame { labels })
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    /// Half the dimension of the contact distribution, `n` in `2n+1`.
    pub fn n(&self) -> usize {
        self.labels.len() / 2
    }

    pub fn reeb_index(&self) -> usize {
        self.labels.len() - 1
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Tensor {
    dim: usize,
    rank: usize,
    data: Vec<Scalar>,
}

impl Tensor {
    pub fn zeros(dim: usize, rank: usize) -> Self {
        assert!(rank <= MAX_RANK, "rank {rank} exceeds {MAX_RANK}");
        Tensor {
            dim,
            rank,
            data: vec![Polynomial::zero(); dim.pow(rank as u32)],
        }
    }

    pub fn scalar(value: Scalar) -> Self {
        Tensor {
            dim: 0,
            rank: 0,
            data: vec![value],
        }
    }

    pub fn from_fn(dim: usize, rank: usize, mut f: impl FnMut(&[usize]) -> Scalar) -> Self {
        assert!(rank <= MAX_RANK, "rank {rank} exceeds {MAX_RANK}");
        let len = dim.pow(rank as u32);
        let mut idx = vec![0usize; rank];
        let mut data = Vec::with_capacity(len);
        for flat in 0..len {
            unflatten(flat, dim, &mut idx);
            data.push(f(&idx));
        }
        Tensor { dim, rank, data }
    }

    pub fn from_matrix(m: &Matrix) -> Self {
        Tensor::from_fn(m.dim(), 2, |ix| Polynomial::constant(m.get(ix[0], ix[1]).clone()))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn components(&self) -> &[Scalar] {
        &self.data
    }

    fn offset(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.rank);
        idx.iter().fold(0, |acc, &i| acc * self.dim + i)
    }

    pub fn get(&self, idx: &[usize]) -> &Scalar {
        &self.data[self.offset(idx)]
    }

    pub fn set(&mut self, idx: &[usize], value: Scalar) {
        let k = self.offset(idx);
        self.data[k] = value;
    }

    /// The value of a rank-0 tensor.
    pub fn value(&self) -> &Scalar {
        assert_eq!(self.rank, 0, "value() on a rank-{} tensor", self.rank);
        &self.data[0]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Polynomial::is_zero)
    }

    /// Nonzero components with their multi-indices, in storage order.
    pub fn nonzero(&self) -> Vec<(Vec<usize>, &Scalar)> {
        let mut idx = vec![0usize; self.rank];
        self.data
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(k, v)| {
                unflatten(k, self.dim, &mut idx);
                (idx.clone(), v)
            })
            .collect()
    }

    pub fn map(&self, f: impl Fn(&Scalar) -> Scalar) -> Tensor {
        Tensor {
            dim: self.dim,
            rank: self.rank,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Tensor {
        self.map(|v| v.scale(c))
    }

    pub fn scale_by(&self, s: &Scalar) -> Tensor {
        self.map(|v| v * s)
    }

    pub fn substitute_values(&self, assignment: &Assignment) -> Tensor {
        self.map(|v| v.substitute_values(assignment))
    }

    fn check_same_shape(&self, other: &Tensor) {
        assert!(
            self.dim == other.dim && self.rank == other.rank,
            "shape mismatch: ({}, {}) vs ({}, {})",
            self.dim,
            self.rank,
            other.dim,
            other.rank
        );
    }

    pub fn add(&self, other: &Tensor) -> Tensor {
        self.check_same_shape(other);
        Tensor {
            dim: self.dim,
            rank: self.rank,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Tensor) -> Tensor {
        self.check_same_shape(other);
        Tensor {
            dim: self.dim,
            rank: self.rank,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn neg(&self) -> Tensor {
        self.map(|v| -v)
    }

    /// Tensor product of two covariant tensors; the result rank must not
    /// exceed [`MAX_RANK`].
    pub fn outer(&self, other: &Tensor) -> Tensor {
        assert_eq!(self.dim, other.dim);
        let r = self.rank;
        Tensor::from_fn(self.dim, self.rank + other.rank, |ix| {
            self.get(&ix[..r]) * other.get(&ix[r..])
        })
    }

    /// Reorders slots: result slot `k` is input slot `perm[k]`.
    pub fn permute(&self, perm: &[usize]) -> Tensor {
        assert_eq!(perm.len(), self.rank);
        let mut src = vec![0usize; self.rank];
        Tensor::from_fn(self.dim, self.rank, |ix| {
            for (k, &p) in perm.iter().enumerate() {
                src[p] = ix[k];
            }
            self.get(&src).clone()
        })
    }

    /// Row-major nested arrays of canonical scalar strings.
    pub fn to_json(&self) -> serde_json::Value {
        fn nest(t: &Tensor, prefix: &mut Vec<usize>) -> serde_json::Value {
            if prefix.len() == t.rank {
                return serde_json::Value::String(t.get(prefix).to_string());
            }
            let items = (0..t.dim)
                .map(|i| {
                    prefix.push(i);
                    let v = nest(t, prefix);
                    prefix.pop();
                    v
                })
                .collect();
            serde_json::Value::Array(items)
        }
        nest(self, &mut Vec::new())
    }
}

fn unflatten(mut flat: usize, dim: usize, idx: &mut [usize]) {
    for slot in idx.iter_mut().rev() {
        *slot = flat % dim;
        flat /= dim;
    }
}

impl fmt::Debug for Tensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tensor(dim={}, rank={}) {{", self.dim, self.rank)?;
        for (ix, v) in self.nonzero() {
            write!(f, " {ix:?}: {v};")?;
        }
        f.write_str(" }")
    }
}

/// Constant nondegenerate symmetric bilinear form and its exact inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Metric {
    g: Matrix,
    g_inv: Matrix,
}

impl Metric {
    pub fn new(g: Matrix) -> Result<Self> {
        if !g.is_symmetric() {
            return Err(Error::Validation("metric matrix is not symmetric".into()));
        }
        let g_inv = g.inverse()?;
        Ok(Metric { g, g_inv })
    }

    pub fn dim(&self) -> usize {
        self.g.dim()
    }

    pub fn g(&self) -> &Matrix {
        &self.g
    }

    pub fn g_inv(&self) -> &Matrix {
        &self.g_inv
    }

    pub fn tensor(&self) -> Tensor {
        Tensor::from_matrix(&self.g)
    }

    /// `g(u, v)` for component vectors of Scalars.
    pub fn pair(&self, u: &[Scalar], v: &[Scalar]) -> Scalar {
        bilinear(&self.g, u, v)
    }

    /// `g^{-1}(a, b)` for covector components.
    pub fn pair_covectors(&self, a: &[Scalar], b: &[Scalar]) -> Scalar {
        bilinear(&self.g_inv, a, b)
    }

    /// Lowers a vector: `v_k = g_{kl} v^l`.
    pub fn lower(&self, v: &[Scalar]) -> Vec<Scalar> {
        mat_vec(&self.g.transpose(), v)
    }

    /// Raises a covector: `v^k = g^{kl} v_l`.
    pub fn raise(&self, a: &[Scalar]) -> Vec<Scalar> {
        mat_vec(&self.g_inv, a)
    }

    /// Counts of (+, -) entries in the signature, via Sylvester's law on a
    /// diagonalisation.
    pub fn signature(&self) -> (usize, usize) {
        let n = self.g.dim();
        let mut m = self.g.rows();
        let mut pos = 0;
        let mut neg = 0;
        for k in 0..n {
            if m[k][k].is_zero() {
                // bring a nonzero diagonal into place with a congruence
                if let Some(j) = (k + 1..n).find(|&j| !m[j][j].is_zero()) {
                    m.swap(k, j);
                    for row in m.iter_mut() {
                        row.swap(k, j);
                    }
                } else if let Some(j) = (k + 1..n).find(|&j| !m[k][j].is_zero()) {
                    for c in 0..n {
                        let v = m[j][c].clone();
                        m[k][c] += v;
                    }
                    for r in 0..n {
                        let v = m[r][j].clone();
                        m[r][k] += v;
                    }
                }
            }
            let d = m[k][k].clone();
            if d.is_zero() {
                continue;
            }
            if d > Rational::zero() {
                pos += 1;
            } else {
                neg += 1;
            }
            for i in k + 1..n {
                let f = &m[i][k] / &d;
                for c in k..n {
                    let v = &m[k][c] * &f;
                    m[i][c] -= v;
                }
            }
            for i in k + 1..n {
                m[k][i] = Rational::zero();
            }
        }
        (pos, neg)
    }
}

fn bilinear(m: &Matrix, u: &[Scalar], v: &[Scalar]) -> Scalar {
    let n = m.dim();
    let mut acc = Polynomial::zero();
    for i in 0..n {
        if u[i].is_zero() {
            continue;
        }
        for j in 0..n {
            let c = m.get(i, j);
            if c.is_zero() || v[j].is_zero() {
                continue;
            }
            acc += (&u[i] * &v[j]).scale(c);
        }
    }
    acc
}

pub(crate) fn mat_vec(m: &Matrix, v: &[Scalar]) -> Vec<Scalar> {
    let n = m.dim();
    (0..n)
        .map(|i| {
            let mut acc = Polynomial::zero();
            for j in 0..n {
                let c = m.get(i, j);
                if !c.is_zero() && !v[j].is_zero() {
                    acc += v[j].scale(c);
                }
            }
            acc
        })
        .collect()
}

/// Exact inverse of a constant symmetric rank-2 tensor.
pub fn metric_inverse(g: &Tensor) -> Result<Tensor> {
    if g.rank() != 2 {
        return Err(Error::Shape(format!("metric must have rank 2, got {}", g.rank())));
    }
    let n = g.dim();
    let mut m = Matrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            let c = g.get(&[i, j]).as_constant().ok_or_else(|| {
                Error::Validation("metric entries must be rational constants".into())
            })?;
            m.set(i, j, c);
        }
    }
    if !m.is_symmetric() {
        return Err(Error::Validation("metric matrix is not symmetric".into()));
    }
    Ok(Tensor::from_matrix(&m.inverse()?))
}

/// Contracts slots `a` and `b` with the inverse metric:
/// `sum g^{ij} t(.. i .. j ..)`. The remaining slots keep their order.
pub fn contract(t: &Tensor, a: usize, b: usize, m: &Metric) -> Result<Tensor> {
    let r = t.rank();
    for slot in [a, b] {
        if slot >= r {
            return Err(Error::SlotOutOfRange { slot, rank: r });
        }
    }
    if a == b {
        return Err(Error::Shape("cannot contract a slot with itself".into()));
    }
    let dim = t.dim();
    let ginv = m.g_inv();
    let mut pairs = Vec::new();
    for i in 0..dim {
        for j in 0..dim {
            let c = ginv.get(i, j);
            if !c.is_zero() {
                pairs.push((i, j, c.clone()));
            }
        }
    }
    let mut full = vec![0usize; r];
    let build = |rest: &[usize], full: &mut Vec<usize>| {
        let mut acc = Polynomial::zero();
        for (i, j, c) in &pairs {
            let mut it = rest.iter();
            for (s, slot) in full.iter_mut().enumerate() {
                *slot = if s == a {
                    *i
                } else if s == b {
                    *j
                } else {
                    *it.next().expect("rest index")
                };
            }
            let v = t.get(full);
            if !v.is_zero() {
                acc += v.scale(c);
            }
        }
        acc
    };
    if r == 2 {
        return Ok(Tensor::scalar(build(&[], &mut full)));
    }
    Ok(Tensor::from_fn(dim, r - 2, |rest| build(rest, &mut full)))
}

/// Precomposes each selected covariant slot with the endomorphism `phi`:
/// slot `s` of the result evaluated on `e_j` equals `t` evaluated on `phi e_j`.
pub fn apply_phi(t: &Tensor, slots: &[usize], phi: &Matrix) -> Result<Tensor> {
    let mut out = t.clone();
    for &s in slots {
        if s >= t.rank() {
            return Err(Error::SlotOutOfRange { slot: s, rank: t.rank() });
        }
        let src = out;
        let dim = t.dim();
        let mut ix2 = vec![0usize; t.rank()];
        out = Tensor::from_fn(dim, t.rank(), |ix| {
            ix2.copy_from_slice(ix);
            let mut acc = Polynomial::zero();
            for i in 0..dim {
                let c = phi.get(i, ix[s]);
                if c.is_zero() {
                    continue;
                }
                ix2[s] = i;
                acc += src.get(&ix2).scale(c);
            }
            acc
        });
    }
    Ok(out)
}

/// `(h1 ⊙ h2)(x,y,z,w) = h1(x,z)h2(y,w) - h1(y,z)h2(x,w) + h1(y,w)h2(x,z) - h1(x,w)h2(y,z)`.
pub fn kulkarni_nomizu(h1: &Tensor, h2: &Tensor) -> Result<Tensor> {
    if h1.rank() != 2 || h2.rank() != 2 || h1.dim() != h2.dim() {
        return Err(Error::Shape("Kulkarni–Nomizu product needs two rank-2 tensors".into()));
    }
    Ok(Tensor::from_fn(h1.dim(), 4, |ix| {
        let (x, y, z, w) = (ix[0], ix[1], ix[2], ix[3]);
        &(&(h1.get(&[x, z]) * h2.get(&[y, w])) - &(h1.get(&[y, z]) * h2.get(&[x, w])))
            + &(&(h1.get(&[y, w]) * h2.get(&[x, z])) - &(h1.get(&[x, w]) * h2.get(&[y, z])))
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn paper_metric() -> Metric {
        Metric::new(Matrix::diagonal(&[int(1), int(1), int(-1), int(-1), int(1)])).unwrap()
    }

    fn paper_phi() -> Matrix {
        let mut phi = Matrix::zeros(5);
        phi.set(2, 0, int(1));
        phi.set(3, 1, int(1));
        phi.set(0, 2, int(-1));
        phi.set(1, 3, int(-1));
        phi
    }

    #[test]
    fn frame_rules() {
        assert!(Frame::new(4).is_err());
        assert!(Frame::new(1).is_err());
        let f = Frame::new(5).unwrap();
        assert_eq!(f.reeb_index(), 4);
        assert_eq!(f.label(4), "xi");
        assert_eq!(f.n(), 2);
    }

    #[test]
    fn inverse_via_tensor() {
        let g = paper_metric().tensor();
        assert_eq!(metric_inverse(&g).unwrap(), g);
        let singular = Tensor::from_matrix(&Matrix::from_i64(&[&[1, 1, 0], &[1, 1, 0], &[0, 0, 1]]).unwrap());
        assert_eq!(metric_inverse(&singular), Err(Error::SingularMatrix));
    }

    #[test]
    fn trace_of_identity() {
        let m = paper_metric();
        let t = contract(&m.tensor(), 0, 1, &m).unwrap();
        assert_eq!(t.value(), &Polynomial::int(5));
    }

    #[test]
    fn contract_slot_errors() {
        let m = paper_metric();
        assert_eq!(
            contract(&m.tensor(), 0, 2, &m),
            Err(Error::SlotOutOfRange { slot: 2, rank: 2 })
        );
        assert!(contract(&m.tensor(), 1, 1, &m).is_err());
    }

    #[test]
    fn phi_compatibility_of_paper_metric() {
        let m = paper_metric();
        let phi = paper_phi();
        let twisted = apply_phi(&m.tensor(), &[0, 1], &phi).unwrap();
        let mut eta = Tensor::zeros(5, 1);
        eta.set(&[4], Polynomial::one());
        let expected = m.tensor().neg().add(&eta.outer(&eta));
        assert_eq!(twisted, expected);
    }

    #[test]
    fn phi_twice_on_horizontal_covector() {
        let phi = paper_phi();
        let alpha = Tensor::from_fn(5, 1, |ix| {
            if ix[0] == 4 {
                Polynomial::zero()
            } else {
                Polynomial::int(ix[0] as i64 + 2)
            }
        });
        let twice = apply_phi(&alpha, &[0, 0], &phi).unwrap();
        assert_eq!(twice, alpha.neg());
        // phi xi = 0
        let once = apply_phi(&alpha, &[0], &phi).unwrap();
        assert!(once.get(&[4]).is_zero());
    }

    #[test]
    fn kulkarni_nomizu_examples() {
        let g = Tensor::from_matrix(&Matrix::identity(2));
        let gg = kulkarni_nomizu(&g, &g).unwrap();
        assert_eq!(gg.get(&[0, 1, 0, 1]), &Polynomial::int(2));
        assert!(kulkarni_nomizu(&g, &Tensor::zeros(2, 2)).unwrap().is_zero());
        assert_eq!(gg.permute(&[1, 0, 2, 3]), gg.neg());
    }

    #[test]
    fn signature_of_paper_metric() {
        assert_eq!(paper_metric().signature(), (3, 2));
        let hyperbolic = Metric::new(Matrix::from_i64(&[&[0, 1], &[1, 0]]).unwrap()).unwrap();
        assert_eq!(hyperbolic.signature(), (1, 1));
    }
}
