//! Solves theta(xi) = theta*(xi) = 0 on the eight-parameter family for
//! mu2 and mu4.

use bmetric::paperlab::derive_constraints;

fn main() -> bmetric::Result<()> {
    let d = derive_constraints()?;
    println!("theta(xi)  = {}", d.theta_xi);
    println!("theta*(xi) = {}", d.theta_star_xi);
    println!("mu2 = {}", d.mu2);
    println!("mu4 = {}", d.mu4);
    println!("constrained parameters: {}", d.params.render());
    Ok(())
}
