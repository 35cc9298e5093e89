use super::fundamental::{nabla_eta, FundamentalTensor};
use super::structure::AcbmStructure;
use crate::liealg::Connection;
use crate::scalar::{Polynomial, Scalar};
use crate::tensor::Matrix;

/// Square norms of `∇φ`, `∇η` and `∇ξ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Norms {
    pub sq_nabla_phi: Scalar,
    pub sq_nabla_eta: Scalar,
    pub sq_nabla_xi: Scalar,
}

impl Norms {
    /// `‖∇φ‖² + 2‖∇η‖²`, which vanishes on the class `U`.
    pub fn u_relation_residual(&self) -> Scalar {
        &self.sq_nabla_phi + &self.sq_nabla_eta.scale(&crate::scalar::int(2))
    }
}

fn nonzero_entries(m: &Matrix) -> Vec<(usize, usize, crate::scalar::Rational)> {
    let n = m.dim();
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if !num_traits::Zero::is_zero(m.get(i, j)) {
                out.push((i, j, m.get(i, j).clone()));
            }
        }
    }
    out
}

/// - `‖∇φ‖² = g^{ij} g^{ks} g((∇_{e_i}φ)e_k, (∇_{e_j}φ)e_s)`, from the lowered `F`
/// - `‖∇η‖² = g^{ij} g^{ks} (∇_{e_i}η)e_k (∇_{e_j}η)e_s`
/// - `‖∇ξ‖² = g^{ij} g(∇_{e_i}ξ, ∇_{e_j}ξ)`, from the connection directly
pub fn square_norms(conn: &Connection, f: &FundamentalTensor, s: &AcbmStructure) -> Norms {
    let m = s.metric();
    let ginv = nonzero_entries(m.g_inv());

    let mut sq_phi = Polynomial::zero();
    for (i, j, gij) in &ginv {
        for (k, t, gks) in &ginv {
            let u: Vec<Scalar> = (0..s.dim()).map(|a| f.get(*i, *k, a).clone()).collect();
            let v: Vec<Scalar> = (0..s.dim()).map(|a| f.get(*j, *t, a).clone()).collect();
            let pair = m.pair_covectors(&u, &v);
            if !pair.is_zero() {
                sq_phi += pair.scale(&(gij * gks));
            }
        }
    }

    let h = nabla_eta(conn, s);
    let mut sq_eta = Polynomial::zero();
    for (i, j, gij) in &ginv {
        for (k, t, gks) in &ginv {
            let p = h.get(&[*i, *k]) * h.get(&[*j, *t]);
            if !p.is_zero() {
                sq_eta += p.scale(&(gij * gks));
            }
        }
    }

    let xi = s.xi();
    let nabla_xi: Vec<Vec<Scalar>> = (0..s.dim()).map(|i| conn.nabla_vector(i, &xi)).collect();
    let mut sq_xi = Polynomial::zero();
    for (i, j, gij) in &ginv {
        sq_xi += m.pair(&nabla_xi[*i], &nabla_xi[*j]).scale(gij);
    }

    Norms {
        sq_nabla_phi: sq_phi,
        sq_nabla_eta: sq_eta,
        sq_nabla_xi: sq_xi,
    }
}
