//! Parses and validates every embedded example space, including the
//! residue identity on 4-dimensional strata.
//!
//! Run with: cargo run --example validate_corpus

use gkm::corpus;

fn main() {
    for entry in corpus::ENTRIES {
        let space = corpus::space(entry.name);
        let report = space.validate();
        println!(
            "{:12} rank {} | {} fixed points, {} strata | valid: {}",
            entry.name,
            space.torus.rank,
            space.n_points(),
            space.strata.len(),
            report.is_valid()
        );
        for issue in &report.issues {
            println!("    {:?}: {}: {}", issue.severity, issue.location, issue.message);
        }
    }
}
