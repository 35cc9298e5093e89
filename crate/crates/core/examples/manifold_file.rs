//! Parses a manifold description from text, prints its canonical form and
//! evaluates a few quantities through the command-line front end.

use bmetric::cli::{eval_expr, parse_manifold_str};
use bmetric::acbm::Analysis;

const HEISENBERG_TIMES_R2: &str = "\
bmetric-manifold 1
dim 5
xi 5
params a
eta 0 0 0 0 1
metric
  1 0 0 0 0
  0 1 0 0 0
  0 0 -1 0 0
  0 0 0 -1 0
  0 0 0 0 1
end
phi
  0 0 -1 0 0
  0 0 0 -1 0
  1 0 0 0 0
  0 1 0 0 0
  0 0 0 0 0
end
bracket 1 3 5 a
";

fn main() -> bmetric::Result<()> {
    let m = parse_manifold_str(HEISENBERG_TIMES_R2)?;
    print!("{}", m.file.to_text());
    let a = Analysis::run(m.algebra.clone(), m.structure.clone())?;
    for expr in ["tau", "sq_nabla_phi", "F(e1,e1,xi)", "rho(xi,xi)"] {
        println!("{expr} = {}", eval_expr(&m, &a, expr)?);
    }
    match parse_manifold_str("bmetric-manifold 1\ndim 4\n") {
        Ok(_) => println!("unexpected success"),
        Err(e) => println!("rejected: {e}"),
    }
    Ok(())
}
