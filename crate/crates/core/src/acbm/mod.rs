//! Almost contact B-metric layer.
//!
//! Everything here takes the structure `(φ, ξ, η, g)` plus data computed by
//! [`crate::liealg`] and returns exact tensors or residuals. Identity checks
//! return the residual tensor rather than a bare boolean so that a failing
//! component can be named.

mod classify;
mod fundamental;
mod identities;
mod normality;
mod norms;
mod structure;

pub use classify::{
    class_residuals, classify, classify_from_parts, ClassFlags, ClassResiduals, ClassWitness,
    ClassificationReport, COND_ETA_CLOSED, COND_F_ZERO, COND_HYBRID_XI, COND_ISOTROPIC,
    COND_NORMAL, COND_SYM_XI, COND_THETA, COND_THETA_STAR, COND_U_SPLIT, COND_U_XI,
};
pub use fundamental::{
    eta_of_nabla_xi, eta_xi_residual, fundamental_f, fundamental_f_brackets, lee_forms,
    nabla_eta, FundamentalTensor, LeeForms,
};
pub use identities::{
    almost_einstein_decompose, corollary_residuals, rho_star_tau_star,
    theorem_r_identity_residual,
};
pub use normality::{nijenhuis, NormalityData};
pub use norms::{square_norms, Norms};
pub use structure::{
    associated_metric, b_metric_residual, verify_structure, AcbmStructure, StructureCheck,
    StructureWitness,
};

use std::collections::BTreeMap;

use crate::error::Result;
use crate::liealg::{curvature, jacobi_check, levi_civita, Connection, CurvatureData, LieAlgebra};
use crate::scalar::{Assignment, Polynomial, Scalar};
use crate::tensor::Tensor;

/// Every derived object for one left-invariant structure.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub algebra: LieAlgebra,
    pub structure: AcbmStructure,
    pub connection: Connection,
    pub fundamental: FundamentalTensor,
    pub fundamental_brackets: FundamentalTensor,
    pub lee: LeeForms,
    pub h: Tensor,
    pub normality: NormalityData,
    pub norms: Norms,
    pub curvature: CurvatureData,
    pub rho_star: Tensor,
    pub tau_star: Scalar,
    pub classification: ClassificationReport,
}

impl Analysis {
    /// Runs the full pipeline. Fails if the structure relations or the
    /// Jacobi identity do not hold.
    pub fn run(algebra: LieAlgebra, structure: AcbmStructure) -> Result<Self> {
        let check = verify_structure(&structure);
        if let Some(w) = check.witnesses.first() {
            return Err(crate::Error::Structure(format!(
                "{} at {:?}: residual {}",
                w.relation,
                w.indices.iter().map(|i| i + 1).collect::<Vec<_>>(),
                crate::scalar::format_rational(&w.residual)
            )));
        }
        jacobi_check(&algebra).into_result()?;
        Self::run_unchecked(algebra, structure)
    }

    /// Runs the pipeline without the structure and Jacobi pre-checks.
    pub fn run_unchecked(algebra: LieAlgebra, structure: AcbmStructure) -> Result<Self> {
        let connection = levi_civita(&algebra, structure.metric())?;
        let fundamental = fundamental_f(&connection, &structure);
        let fundamental_brackets = fundamental_f_brackets(&algebra, &structure);
        let lee = lee_forms(&fundamental, &structure);
        let h = nabla_eta(&connection, &structure);
        let normality = nijenhuis(&algebra, &structure);
        let norms = square_norms(&connection, &fundamental, &structure);
        let curvature = curvature(&connection, &algebra, structure.metric());
        let (rho_star, tau_star) = rho_star_tau_star(&curvature, &structure);
        let classification =
            classify_from_parts(&structure, &fundamental, &lee, &norms, &normality);
        Ok(Analysis {
            algebra,
            structure,
            connection,
            fundamental,
            fundamental_brackets,
            lee,
            h,
            normality,
            norms,
            curvature,
            rho_star,
            tau_star,
            classification,
        })
    }

    /// Recomputes everything after substituting rational values for some
    /// parameters.
    pub fn specialise(&self, assignment: &Assignment) -> Result<Self> {
        Self::run_unchecked(self.algebra.substitute_values(assignment), self.structure.clone())
    }

    /// Recomputes everything after substituting polynomials for parameters.
    pub fn substitute(&self, subs: &BTreeMap<String, Polynomial>) -> Result<Self> {
        Self::run_unchecked(
            self.algebra.map_scalars(|c| c.substitute(subs)),
            self.structure.clone(),
        )
    }

    pub fn theorem_r_residual(&self) -> Tensor {
        theorem_r_identity_residual(&self.curvature, &self.h, &self.structure)
    }

    pub fn corollary_residuals(&self) -> (Tensor, Tensor) {
        corollary_residuals(&self.curvature, &self.structure)
    }
}
