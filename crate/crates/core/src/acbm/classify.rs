use serde::Serialize;

use super::fundamental::{lee_forms, FundamentalTensor, LeeForms};
use super::normality::{nijenhuis, NormalityData};
use super::norms::{square_norms, Norms};
use super::structure::AcbmStructure;
use crate::liealg::{Connection, LieAlgebra};
use crate::scalar::Scalar;
use crate::tensor::{apply_phi, Tensor};

/// Class membership, each flag an exact (symbolic) statement.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ClassFlags {
    pub f0: bool,
    pub u: bool,
    pub u1: bool,
    pub u2: bool,
    pub f4: bool,
    pub f5: bool,
    pub f6: bool,
    pub isotropic_f0: bool,
    pub normal_n_zero: bool,
    pub eta_closed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassWitness {
    pub condition: &'static str,
    /// 0-based component indices; empty for scalar conditions.
    pub indices: Vec<usize>,
    pub residual: Scalar,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationReport {
    pub flags: ClassFlags,
    pub witnesses: Vec<ClassWitness>,
}

pub const COND_F_ZERO: &str = "F = 0";
pub const COND_U_SPLIT: &str = "F(x,y,z) = eta(y)F(x,z,xi) + eta(z)F(x,y,xi)";
pub const COND_U_XI: &str = "F(xi,y,z) = 0";
pub const COND_SYM_XI: &str = "F(x,y,xi) = F(y,x,xi)";
pub const COND_HYBRID_XI: &str = "F(x,y,xi) = -F(phi x,phi y,xi)";
pub const COND_THETA: &str = "theta = 0";
pub const COND_THETA_STAR: &str = "theta* = 0";
pub const COND_ISOTROPIC: &str = "|nabla phi|^2 = 0";
pub const COND_NORMAL: &str = "N = 0";
pub const COND_ETA_CLOSED: &str = "d eta = 0";

/// Witnesses kept per failing condition.
const WITNESS_LIMIT: usize = 3;

/// Residual tensors of the defining conditions of `U`, `U₁`, `U₂`.
pub struct ClassResiduals {
    pub u_split: Tensor,
    pub u_xi: Tensor,
    pub sym_xi: Tensor,
    pub hybrid_xi: Tensor,
}

pub fn class_residuals(f: &FundamentalTensor, s: &AcbmStructure) -> ClassResiduals {
    let n = s.dim();
    let xi = s.reeb();
    let eta = s.eta();
    let t = f.tensor();
    let u_split = Tensor::from_fn(n, 3, |ix| {
        let (x, y, z) = (ix[0], ix[1], ix[2]);
        let mut v = t.get(ix).clone();
        v -= &t.get(&[x, z, xi]).scale(&eta[y]);
        v -= &t.get(&[x, y, xi]).scale(&eta[z]);
        v
    });
    let u_xi = Tensor::from_fn(n, 2, |ix| t.get(&[xi, ix[0], ix[1]]).clone());
    let f_xi = Tensor::from_fn(n, 2, |ix| t.get(&[ix[0], ix[1], xi]).clone());
    let sym_xi = f_xi.sub(&f_xi.permute(&[1, 0]));
    let hybrid_xi = f_xi.add(&apply_phi(&f_xi, &[0, 1], s.phi()).expect("rank 2"));
    ClassResiduals {
        u_split,
        u_xi,
        sym_xi,
        hybrid_xi,
    }
}

/// Exact class membership from `F`, the Lee forms, `‖∇φ‖²` and `N`.
pub fn classify(
    l: &LieAlgebra,
    s: &AcbmStructure,
    conn: &Connection,
    f: &FundamentalTensor,
) -> ClassificationReport {
    let lee = lee_forms(f, s);
    let norms = square_norms(conn, f, s);
    let normality = nijenhuis(l, s);
    classify_from_parts(s, f, &lee, &norms, &normality)
}

pub fn classify_from_parts(
    s: &AcbmStructure,
    f: &FundamentalTensor,
    lee: &LeeForms,
    norms: &Norms,
    normality: &NormalityData,
) -> ClassificationReport {
    let r = class_residuals(f, s);
    let mut witnesses = Vec::new();
    let mut check = |condition: &'static str, t: &Tensor| -> bool {
        let bad = t.nonzero();
        for (ix, v) in bad.iter().take(WITNESS_LIMIT) {
            witnesses.push(ClassWitness {
                condition,
                indices: ix.clone(),
                residual: (*v).clone(),
            });
        }
        bad.is_empty()
    };
    let f0 = check(COND_F_ZERO, f.tensor());
    let u_split = check(COND_U_SPLIT, &r.u_split);
    let u_xi = check(COND_U_XI, &r.u_xi);
    let sym = check(COND_SYM_XI, &r.sym_xi);
    let hybrid = check(COND_HYBRID_XI, &r.hybrid_xi);
    let theta = check(COND_THETA, &lee.theta);
    let theta_star = check(COND_THETA_STAR, &lee.theta_star);
    let iso = check(COND_ISOTROPIC, &Tensor::scalar(norms.sq_nabla_phi.clone()));
    let normal = check(COND_NORMAL, &normality.nijenhuis);
    let closed = check(COND_ETA_CLOSED, &normality.d_eta);

    let u = u_split && u_xi;
    let u1 = u && sym && hybrid;
    let u2 = u && hybrid;
    ClassificationReport {
        flags: ClassFlags {
            f0,
            u,
            u1,
            u2,
            f4: u1 && theta_star,
            f5: u1 && theta,
            f6: u1 && theta && theta_star,
            isotropic_f0: iso,
            normal_n_zero: normal,
            eta_closed: closed,
        },
        witnesses,
    }
}
