use super::structure::{unit, AcbmStructure};
use crate::liealg::LieAlgebra;
use crate::scalar::Scalar;
use crate::tensor::Tensor;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalityData {
    /// `g([φ,φ](e_i,e_j), e_k)`
    pub phi_phi: Tensor,
    /// `g(N(e_i,e_j), e_k)` with `N = [φ,φ] + dη ⊗ ξ`
    pub nijenhuis: Tensor,
    /// `dη(e_i,e_j) = −η([e_i,e_j])`
    pub d_eta: Tensor,
}

impl NormalityData {
    pub fn is_normal(&self) -> bool {
        self.nijenhuis.is_zero()
    }

    pub fn eta_closed(&self) -> bool {
        self.d_eta.is_zero()
    }
}

/// `[φ,φ](x,y) = φ²[x,y] + [φx,φy] − φ[φx,y] − φ[x,φy]` on basis pairs, and
/// `dη` for a constant-coefficient `η`.
pub fn nijenhuis(l: &LieAlgebra, s: &AcbmStructure) -> NormalityData {
    let n = s.dim();
    let m = s.metric();
    let e = |i: usize| unit(n, i);
    let phi_e: Vec<Vec<Scalar>> = (0..n).map(|i| s.phi_of(&e(i))).collect();
    let xi = s.xi();
    let mut pp = Vec::with_capacity(n * n);
    let mut nn = Vec::with_capacity(n * n);
    let mut de = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let br = l.bracket_basis(i, j);
            let t1 = s.phi_of(&s.phi_of(&br));
            let t2 = l.bracket(&phi_e[i], &phi_e[j]);
            let t3 = s.phi_of(&l.bracket(&phi_e[i], &e(j)));
            let t4 = s.phi_of(&l.bracket(&e(i), &phi_e[j]));
            let v: Vec<Scalar> = (0..n)
                .map(|k| &(&(&t1[k] + &t2[k]) - &t3[k]) - &t4[k])
                .collect();
            let d = -s.eta_of(&br);
            let nv: Vec<Scalar> = v.iter().zip(&xi).map(|(a, x)| a + &(x * &d)).collect();
            pp.push(m.lower(&v));
            nn.push(m.lower(&nv));
            de.push(d);
        }
    }
    NormalityData {
        phi_phi: Tensor::from_fn(n, 3, |ix| pp[ix[0] * n + ix[1]][ix[2]].clone()),
        nijenhuis: Tensor::from_fn(n, 3, |ix| nn[ix[0] * n + ix[1]][ix[2]].clone()),
        d_eta: Tensor::from_fn(n, 2, |ix| de[ix[0] * n + ix[1]].clone()),
    }
}
