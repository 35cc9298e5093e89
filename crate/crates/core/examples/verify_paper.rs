//! Runs the claim suite in both modes and prints the summary lines.
//!
//! Pass a seed as the first argument to change the sampled points.

use bmetric::paperlab::{verify_paper, Mode};

fn main() {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(1);
    for mode in [Mode::Symbolic, Mode::Sampled] {
        let r = verify_paper(mode, seed, 20);
        println!(
            "{:<9} total {} verified-exact {} discrepancy {} failed {} (theorems failed {})",
            mode.as_str(),
            r.summary.total,
            r.summary.verified_exact,
            r.summary.discrepancy,
            r.summary.failed,
            r.summary.theorem_failed
        );
        for item in r.items.iter().filter(|i| i.status.as_str() != "verified-exact") {
            println!("  {} {}", item.status.as_str(), item.id);
        }
    }
}
