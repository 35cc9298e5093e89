//! Exact rational polynomials: parsing, canonical rendering, evaluation and
//! substitution.

use bmetric::scalar::{parse_expr, rat, Assignment};
use bmetric::Polynomial;
use std::collections::BTreeMap;

fn main() -> bmetric::Result<()> {
    let p = parse_expr("4*(lambda3^2 - lambda1^2) - (lambda2 + mu1)^2 + (lambda4 + mu3)^2")?;
    println!("expanded: {p}");
    println!("degree {} in {} variables", p.degree(), p.variables().len());

    let point: Assignment = [
        ("lambda1", rat(1, 2)),
        ("lambda2", rat(0, 1)),
        ("lambda3", rat(-1, 3)),
        ("lambda4", rat(2, 1)),
        ("mu1", rat(1, 1)),
        ("mu3", rat(-5, 4)),
    ]
    .into_iter()
    .map(|(k, v)| (k.to_string(), v))
    .collect();
    println!("value at a rational point: {}", bmetric::scalar::format_rational(&p.evaluate(&point)?));

    let subs = BTreeMap::from([
        ("mu1".to_string(), -Polynomial::var("lambda2")),
        ("mu3".to_string(), -Polynomial::var("lambda4")),
    ]);
    println!("with mu1 = -lambda2, mu3 = -lambda4: {}", p.substitute(&subs));

    let q = &p * &parse_expr("-3/2")?;
    println!("q / p = {}", q.ratio_to(&p).map(|r| r.to_string()).unwrap_or_default());
    Ok(())
}
