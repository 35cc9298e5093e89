//! Class membership of the family at a few parameter points, including an
//! isotropic point that is not F0.

use bmetric::acbm::Analysis;
use bmetric::paperlab::{build_f6_family, FamilyParams};

fn show(name: &str, p: &FamilyParams) -> bmetric::Result<()> {
    let (l, s) = build_f6_family(p)?;
    let a = Analysis::run(l, s)?;
    let f = a.classification.flags;
    println!(
        "{name:<12} F0={} F6={} isotropic-F0={} |nabla phi|^2={}",
        f.f0, f.f6, f.isotropic_f0, a.norms.sq_nabla_phi
    );
    for w in a.classification.witnesses.iter().take(2) {
        println!("{:<12}   unsatisfied: {} -> {}", "", w.condition, w.residual);
    }
    Ok(())
}

fn main() -> bmetric::Result<()> {
    show("symbolic", &FamilyParams::symbolic())?;
    show("generic", &FamilyParams::from_i64([1, 2, 3, 4], 5, 6))?;
    show("isotropic", &FamilyParams::from_i64([1, 2, 1, -3], -2, 3))?;
    show("flat", &FamilyParams::from_i64([0, 2, 0, -3], -2, 3))?;
    Ok(())
}
