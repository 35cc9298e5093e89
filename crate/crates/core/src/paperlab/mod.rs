//! The five-dimensional Lie group family with an `F6` structure and the
//! claim suite that checks the printed results about it.
//!
//! Claims come in two kinds. Theorem claims are proved statements and a
//! failure is a bug somewhere. Table claims compare printed closed forms
//! with the engine and report residuals when they disagree.

mod claims;
pub mod family;
pub mod published;
mod report;

pub use family::{
    build_f6_family, build_general_family, derive_constraints, sample_random_params,
    DerivedConstraints, FamilyParams,
};
pub use report::{
    ClaimItem, ClaimKind, Detail, Mode, Status, Summary, VerificationReport, REPORT_SCHEMA,
};

use claims::{sample_points, ClaimDef, Env, Scope, Subject, CLAIMS};

use crate::acbm::AcbmStructure;
use crate::error::Result;
use crate::liealg::LieAlgebra;

/// Ids of the fixed claim suite, sorted.
pub fn claim_ids() -> Vec<&'static str> {
    let mut ids: Vec<_> = CLAIMS.iter().map(|c| c.id).collect();
    ids.sort_unstable();
    ids
}

/// Runs the suite on the built-in family.
pub fn verify_paper(mode: Mode, seed: u64, samples: usize) -> VerificationReport {
    verify_family(None, mode, seed, samples).expect("the built-in family is well formed")
}

/// Runs the suite with the given algebra and structure standing in for the
/// family. The algebra is read over the six free parameters
/// `lambda1..lambda4, mu1, mu3`.
pub fn verify_family(
    family: Option<(LieAlgebra, AcbmStructure)>,
    mode: Mode,
    seed: u64,
    samples: usize,
) -> Result<VerificationReport> {
    let params = FamilyParams::symbolic();
    let general = FamilyParams::symbolic_general();
    let (algebra, structure) = match family {
        Some(f) => f,
        None => build_f6_family(&params)?,
    };
    let base = Subject::new(algebra, structure, params, &general)?;
    let env = Env { seed, samples };

    let points = match mode {
        Mode::Symbolic => Vec::new(),
        Mode::Sampled => sample_points(seed, samples)
            .into_iter()
            .map(|(p, g)| base.at_point(p, &g))
            .collect::<Result<Vec<_>>>()?,
    };

    let items = CLAIMS
        .iter()
        .map(|def| match (def.scope, mode) {
            (Scope::Pointwise, Mode::Sampled) => run_sampled(def, &points, &env),
            _ => {
                let o = (def.check)(&base, &env);
                item(def, o.status, o.details)
            }
        })
        .collect();
    Ok(VerificationReport::assemble(mode, seed, samples, items))
}

fn item(def: &ClaimDef, status: Status, details: Vec<Detail>) -> ClaimItem {
    ClaimItem {
        id: def.id.to_string(),
        kind: def.kind,
        anchor: def.anchor.to_string(),
        status,
        details,
    }
}

/// Worst status over the points; details of the first point attaining it.
fn run_sampled(def: &ClaimDef, points: &[Subject], env: &Env) -> ClaimItem {
    let outcomes: Vec<_> = points.iter().map(|p| (def.check)(p, env)).collect();
    let worst = outcomes
        .iter()
        .map(|o| o.status)
        .max()
        .unwrap_or(Status::VerifiedExact);
    let count = |s: Status| outcomes.iter().filter(|o| o.status == s).count();
    let mut details = vec![
        Detail::new("points", points.len()),
        Detail::new("points verified-exact", count(Status::VerifiedExact)),
        Detail::new("points with discrepancy", count(Status::Discrepancy)),
        Detail::new("points failed", count(Status::Failed)),
    ];
    if let Some(k) = outcomes.iter().position(|o| o.status == worst) {
        details.push(Detail::new("shown point", points[k].params.render()));
        details.extend(outcomes[k].details.iter().cloned());
    }
    item(def, worst, details)
}
