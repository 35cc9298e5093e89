use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{int, Polynomial, Rational, Scalar};
use crate::tensor::{Frame, Matrix, Metric, Tensor};

/// Almost contact structure `(φ, ξ, η)` with a B-metric `g` on a frame
/// whose last vector is `ξ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AcbmStructure {
    frame: Frame,
    phi: Matrix,
    eta: Vec<Rational>,
    metric: Metric,
    g_assoc: Matrix,
}

impl AcbmStructure {
    /// Assembles a structure without verifying the structure relations; see
    /// [`verify_structure`].
    pub fn new(frame: Frame, phi: Matrix, eta: Vec<Rational>, metric: Metric) -> Result<Self> {
        let n = frame.dim();
        if phi.dim() != n || eta.len() != n || metric.dim() != n {
            return Err(Error::Shape(format!(
                "structure components must all have dimension {n}"
            )));
        }
        let g_assoc = associated_matrix(&phi, &eta, &metric);
        Ok(AcbmStructure {
            frame,
            phi,
            eta,
            metric,
            g_assoc,
        })
    }

    /// The standard structure in dimension `2n+1`:
    /// `φe_i = e_{n+i}`, `φe_{n+i} = −e_i`, `ξ = e_{2n+1}`,
    /// `g = diag(1,..,1, −1,..,−1, 1)`.
    pub fn standard(n: usize) -> Self {
        let dim = 2 * n + 1;
        let mut phi = Matrix::zeros(dim);
        for i in 0..n {
            phi.set(n + i, i, Rational::one());
            phi.set(i, n + i, -Rational::one());
        }
        let mut eta = vec![Rational::zero(); dim];
        eta[dim - 1] = Rational::one();
        let diag: Vec<Rational> = (0..dim)
            .map(|i| if i >= n && i < 2 * n { int(-1) } else { int(1) })
            .collect();
        let metric = Metric::new(Matrix::diagonal(&diag)).expect("diagonal metric");
        AcbmStructure::new(Frame::new(dim).expect("odd dimension"), phi, eta, metric)
            .expect("consistent shapes")
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn dim(&self) -> usize {
        self.frame.dim()
    }

    pub fn reeb(&self) -> usize {
        self.frame.reeb_index()
    }

    pub fn phi(&self) -> &Matrix {
        &self.phi
    }

    pub fn eta(&self) -> &[Rational] {
        &self.eta
    }

    pub fn metric(&self) -> &Metric {
        &self.metric
    }

    /// `g̃(x,y) = g(x,φy) + η(x)η(y)`.
    pub fn g_assoc(&self) -> &Matrix {
        &self.g_assoc
    }

    pub fn xi(&self) -> Vec<Scalar> {
        unit(self.dim(), self.reeb())
    }

    pub fn phi_of(&self, v: &[Scalar]) -> Vec<Scalar> {
        crate::tensor::mat_vec(&self.phi, v)
    }

    pub fn eta_of(&self, v: &[Scalar]) -> Scalar {
        v.iter()
            .zip(&self.eta)
            .filter(|(_, e)| !e.is_zero())
            .map(|(x, e)| x.scale(e))
            .sum()
    }

    /// The rank-1 tensor `η`.
    pub fn eta_tensor(&self) -> Tensor {
        Tensor::from_fn(self.dim(), 1, |ix| Polynomial::constant(self.eta[ix[0]].clone()))
    }

    pub fn with_metric(&self, metric: Metric) -> Result<Self> {
        AcbmStructure::new(self.frame.clone(), self.phi.clone(), self.eta.clone(), metric)
    }
}

pub(crate) fn unit(dim: usize, i: usize) -> Vec<Scalar> {
    (0..dim)
        .map(|k| if k == i { Polynomial::one() } else { Polynomial::zero() })
        .collect()
}

fn associated_matrix(phi: &Matrix, eta: &[Rational], metric: &Metric) -> Matrix {
    let g = metric.g();
    let n = g.dim();
    Matrix::from_fn(n, |i, j| {
        let mut v = &eta[i] * &eta[j];
        for k in 0..n {
            v += g.get(i, k) * phi.get(k, j);
        }
        v
    })
}

/// `g̃` as a tensor.
pub fn associated_metric(s: &AcbmStructure) -> Tensor {
    Tensor::from_matrix(s.g_assoc())
}

/// `(i, j) ↦ b(φe_i, φe_j) + b(e_i, e_j) − η_i η_j` for a bilinear form `b`.
pub fn b_metric_residual(s: &AcbmStructure, b: &Matrix) -> Matrix {
    let phi = s.phi();
    let n = s.dim();
    let eta = s.eta();
    Matrix::from_fn(n, |i, j| {
        let mut v = b.get(i, j) - &eta[i] * &eta[j];
        for a in 0..n {
            for c in 0..n {
                v += phi.get(a, i) * phi.get(c, j) * b.get(a, c);
            }
        }
        v
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureWitness {
    pub relation: &'static str,
    /// 0-based indices of the failing component.
    pub indices: Vec<usize>,
    pub residual: Rational,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StructureCheck {
    pub witnesses: Vec<StructureWitness>,
}

impl StructureCheck {
    pub fn holds(&self) -> bool {
        self.witnesses.is_empty()
    }
}

/// Checks `φξ = 0`, `φ² = −Id + η⊗ξ`, `η∘φ = 0`, `η(ξ) = 1` and
/// `g(φx,φy) = −g(x,y) + η(x)η(y)` componentwise.
pub fn verify_structure(s: &AcbmStructure) -> StructureCheck {
    let n = s.dim();
    let phi = s.phi();
    let eta = s.eta();
    let xi = s.reeb();
    let mut out = Vec::new();
    let mut push = |relation, indices: Vec<usize>, residual: Rational| {
        if !residual.is_zero() {
            out.push(StructureWitness {
                relation,
                indices,
                residual,
            });
        }
    };
    for i in 0..n {
        push("phi xi = 0", vec![i], phi.get(i, xi).clone());
    }
    let phi2 = phi.mul(phi);
    for i in 0..n {
        for j in 0..n {
            let delta = if i == j { Rational::one() } else { Rational::zero() };
            let xi_i = if i == xi { Rational::one() } else { Rational::zero() };
            push(
                "phi^2 = -Id + eta (x) xi",
                vec![i, j],
                phi2.get(i, j) + delta - xi_i * &eta[j],
            );
        }
    }
    for j in 0..n {
        let v = (0..n)
            .map(|i| &eta[i] * phi.get(i, j))
            .fold(Rational::zero(), |a, b| a + b);
        push("eta o phi = 0", vec![j], v);
    }
    push("eta(xi) = 1", vec![xi], &eta[xi] - Rational::one());
    let b = b_metric_residual(s, s.metric().g());
    for i in 0..n {
        for j in 0..n {
            push("g(phi x, phi y) = -g(x, y) + eta(x) eta(y)", vec![i, j], b.get(i, j).clone());
        }
    }
    StructureCheck { witnesses: out }
}
