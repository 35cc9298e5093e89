//! Curvature identities of the U, U1 and U2 classes checked as polynomial
//! identities on the family, plus the norm relation on U.

use bmetric::acbm::Analysis;
use bmetric::liealg::CurvatureSymmetries;
use bmetric::paperlab::{build_f6_family, FamilyParams};

fn main() -> bmetric::Result<()> {
    let (l, s) = build_f6_family(&FamilyParams::symbolic())?;
    let a = Analysis::run(l, s)?;
    for (name, t) in CurvatureSymmetries::of(&a.curvature.riemann).named() {
        println!("{name:<16} residual zero: {}", t.is_zero());
    }
    println!("R identity on U     residual zero: {}", a.theorem_r_residual().is_zero());
    let (cyclic, shift) = a.corollary_residuals();
    println!("cyclic sum on U1    residual zero: {}", cyclic.is_zero());
    println!("phi shift on U2     residual zero: {}", shift.is_zero());
    println!("|nabla phi|^2 + 2|nabla eta|^2 = {}", a.norms.u_relation_residual());
    Ok(())
}
