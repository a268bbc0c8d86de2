//! Computes the equivariant Hilbert series of each example space and
//! extracts ordinary Betti numbers through the formality quotient.
//!
//! Run with: cargo run --example hilbert_series

use gkm::cohomology::hilbert;
use gkm::corpus;

fn main() {
    for entry in corpus::ENTRIES {
        let space = corpus::space(entry.name);
        let data = hilbert(&space, 5);
        let h: Vec<String> = data.equivariant.iter().map(|v| v.to_string()).collect();
        let betti: Vec<String> = data.betti_vector().iter().map(|v| v.to_string()).collect();
        println!(
            "{:12} h = {:18} betti = ({})  consistent = {}",
            entry.name,
            h.join(","),
            betti.join(","),
            data.consistent
        );
    }
}
