//! Levi-Civita connection and curvature of the five-dimensional family with
//! all six parameters kept symbolic.

use bmetric::liealg::{curvature, levi_civita};
use bmetric::paperlab::{build_f6_family, FamilyParams};

fn main() -> bmetric::Result<()> {
    let (algebra, structure) = build_f6_family(&FamilyParams::symbolic())?;
    let frame = structure.frame();
    let conn = levi_civita(&algebra, structure.metric())?;
    let n = structure.dim();
    for i in 0..n {
        for j in 0..n {
            let v = conn.nabla(i, j);
            if v.iter().any(|c| !c.is_zero()) {
                let terms: Vec<String> = v
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(k, c)| format!("({c}) {}", frame.label(k)))
                    .collect();
                println!("nabla_{} {} = {}", frame.label(i), frame.label(j), terms.join(" + "));
            }
        }
    }
    let curv = curvature(&conn, &algebra, structure.metric());
    println!("nonzero curvature components: {}", curv.riemann.nonzero().len());
    println!("scalar curvature: {}", curv.scalar);
    Ok(())
}
