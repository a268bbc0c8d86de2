//! Localizes classes on a 4-dimensional stratum: the weighted sum over
//! fixed points must be divisible by the square of the direction form,
//! and the exact quotient (or the offending remainder) is reported.
//!
//! Run with: cargo run --example localization

use gkm::cohomology::{localization_residue, ResidueOutcome};
use gkm::corpus;
use gkm::report::parse_class_file;

fn main() {
    let space = corpus::space("cp2_s1");
    let names = &space.torus.variables;
    let candidates = [
        r#"{"p1": "x", "p2": "x", "p3": "x"}"#,
        r#"{"p1": "0", "p2": "x^2", "p3": "4*x^2"}"#,
        r#"{"p1": "0", "p2": "x", "p3": "3*x"}"#,
    ];
    for text in candidates {
        let class = parse_class_file(text, &space).expect("well-formed class file");
        match localization_residue(&space, 0, &class).expect("congruences hold") {
            ResidueOutcome::Quotient(quotient) => {
                println!("{}  ->  quotient {}", text, quotient.display(names));
            }
            ResidueOutcome::Violation(remainder) => {
                println!(
                    "{}  ->  NOT divisible; remainder {}",
                    text,
                    remainder.display(names)
                );
            }
        }
    }
}
