//! Tests per-point polynomial assignments for membership in the image
//! of the fixed-point restriction map on CP^2 with a circle action.
//!
//! Run with: cargo run --example membership

use gkm::cohomology::check_class;
use gkm::corpus;
use gkm::report::parse_class_file;

fn main() {
    let space = corpus::space("cp2_s1");
    let candidates = [
        r#"{"p1": "0", "p2": "x", "p3": "2*x"}"#,
        r#"{"p1": "0", "p2": "x", "p3": "3*x"}"#,
        r#"{"p1": "5", "p2": "5", "p3": "5"}"#,
        r#"{"p1": "x^2", "p2": "x^2", "p3": "x^2"}"#,
    ];
    for text in candidates {
        let class = parse_class_file(text, &space).expect("well-formed class file");
        let report = check_class(&space, &class);
        println!("{}  ->  member: {}", text, report.member);
        for violation in &report.violations {
            println!("    {}", violation.describe(&space));
        }
    }
}
