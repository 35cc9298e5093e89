use super::structure::{unit, AcbmStructure};
use crate::liealg::{Connection, LieAlgebra};
use crate::scalar::{rat, Scalar};
use crate::tensor::{apply_phi, contract, Tensor};

/// `F(x,y,z) = g((∇_x φ)y, z)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FundamentalTensor(pub Tensor);

impl FundamentalTensor {
    pub fn tensor(&self) -> &Tensor {
        &self.0
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &Scalar {
        self.0.get(&[i, j, k])
    }

    /// `F(x,y,z) − F(x,z,y)`.
    pub fn symmetry_residual(&self) -> Tensor {
        self.0.sub(&self.0.permute(&[0, 2, 1]))
    }

    /// `F(x,y,z) − F(x,φy,φz) − η(y)F(x,ξ,z) − η(z)F(x,y,ξ)`.
    pub fn phi_expansion_residual(&self, s: &AcbmStructure) -> Tensor {
        let f = &self.0;
        let twisted = apply_phi(f, &[1, 2], s.phi()).expect("rank 3");
        let xi = s.reeb();
        let eta = s.eta();
        Tensor::from_fn(s.dim(), 3, |ix| {
            let (x, y, z) = (ix[0], ix[1], ix[2]);
            let mut v = f.get(ix) - twisted.get(ix);
            v -= &f.get(&[x, xi, z]).scale(&eta[y]);
            v -= &f.get(&[x, y, xi]).scale(&eta[z]);
            v
        })
    }
}

/// `F` from the connection: `(∇_i φ)e_j = ∇_i(φe_j) − φ(∇_i e_j)`.
pub fn fundamental_f(conn: &Connection, s: &AcbmStructure) -> FundamentalTensor {
    let n = s.dim();
    let m = s.metric();
    let mut rows: Vec<Vec<Scalar>> = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let phi_ej = s.phi_of(&unit(n, j));
            let a = conn.nabla_vector(i, &phi_ej);
            let b = s.phi_of(&conn.nabla(i, j));
            let v: Vec<Scalar> = a.iter().zip(&b).map(|(x, y)| x - y).collect();
            rows.push(m.lower(&v));
        }
    }
    FundamentalTensor(Tensor::from_fn(n, 3, |ix| rows[ix[0] * n + ix[1]][ix[2]].clone()))
}

/// `F` straight from the brackets:
///
/// `2F(e_i,e_j,e_k) = g([e_i,φe_j] − φ[e_i,e_j], e_k) + g([e_i,φe_k] − φ[e_i,e_k], e_j)
///                  + g([e_k,φe_j] − [φe_k,e_j], e_i)`.
pub fn fundamental_f_brackets(l: &LieAlgebra, s: &AcbmStructure) -> FundamentalTensor {
    let n = s.dim();
    let m = s.metric();
    let e = |i: usize| unit(n, i);
    let phi_e: Vec<Vec<Scalar>> = (0..n).map(|i| s.phi_of(&e(i))).collect();
    // a[i][j] = lowered [e_i, φe_j] − φ[e_i, e_j]
    let mut a = vec![Vec::new(); n * n];
    // b[k][j] = lowered [e_k, φe_j] − [φe_k, e_j]
    let mut b = vec![Vec::new(); n * n];
    for i in 0..n {
        for j in 0..n {
            let x = l.bracket(&e(i), &phi_e[j]);
            let y = s.phi_of(&l.bracket_basis(i, j));
            let w = l.bracket(&phi_e[i], &e(j));
            a[i * n + j] = m.lower(&x.iter().zip(&y).map(|(p, q)| p - q).collect::<Vec<_>>());
            b[i * n + j] = m.lower(&x.iter().zip(&w).map(|(p, q)| p - q).collect::<Vec<_>>());
        }
    }
    let half = rat(1, 2);
    FundamentalTensor(Tensor::from_fn(n, 3, |ix| {
        let (i, j, k) = (ix[0], ix[1], ix[2]);
        (&(&a[i * n + j][k] + &a[i * n + k][j]) + &b[k * n + j][i]).scale(&half)
    }))
}

/// The three 1-forms attached to `F`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeeForms {
    /// `θ(z) = g^{ij} F(e_i, e_j, z)`
    pub theta: Tensor,
    /// `θ*(z) = g^{ij} F(e_i, φe_j, z)`
    pub theta_star: Tensor,
    /// `ω(z) = F(ξ, ξ, z)`
    pub omega: Tensor,
}

pub fn lee_forms(f: &FundamentalTensor, s: &AcbmStructure) -> LeeForms {
    let m = s.metric();
    let theta = contract(f.tensor(), 0, 1, m).expect("rank 3");
    let twisted = apply_phi(f.tensor(), &[1], s.phi()).expect("rank 3");
    let theta_star = contract(&twisted, 0, 1, m).expect("rank 3");
    let xi = s.reeb();
    let omega = Tensor::from_fn(s.dim(), 1, |ix| f.get(xi, xi, ix[0]).clone());
    LeeForms {
        theta,
        theta_star,
        omega,
    }
}

/// `h(e_i, e_j) = (∇_{e_i} η) e_j = g(∇_{e_i} ξ, e_j)`.
pub fn nabla_eta(conn: &Connection, s: &AcbmStructure) -> Tensor {
    let n = s.dim();
    let xi = s.xi();
    let rows: Vec<Vec<Scalar>> = (0..n)
        .map(|i| s.metric().lower(&conn.nabla_vector(i, &xi)))
        .collect();
    Tensor::from_fn(n, 2, |ix| rows[ix[0]][ix[1]].clone())
}

/// `η(∇_{e_i} ξ)` for each `i`; identically zero for a metric connection.
pub fn eta_of_nabla_xi(conn: &Connection, s: &AcbmStructure) -> Vec<Scalar> {
    let xi = s.xi();
    (0..s.dim())
        .map(|i| s.eta_of(&conn.nabla_vector(i, &xi)))
        .collect()
}

/// `F(e_i, φe_j, ξ) − h(e_i, e_j)`.
pub fn eta_xi_residual(f: &FundamentalTensor, h: &Tensor, s: &AcbmStructure) -> Tensor {
    let twisted = apply_phi(f.tensor(), &[1], s.phi()).expect("rank 3");
    let xi = s.reeb();
    Tensor::from_fn(s.dim(), 2, |ix| twisted.get(&[ix[0], ix[1], xi]) - h.get(ix))
}
