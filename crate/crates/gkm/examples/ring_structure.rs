//! Multiplies graded basis classes pointwise and expresses each product
//! in the solved basis of its degree, demonstrating that the computed
//! image is closed under products.
//!
//! Run with: cargo run --example ring_structure

use gkm::cohomology::{multiply_classes, solve_degree};
use gkm::corpus;
use gkm::exactalg::format_rational;
use gkm::report::render_class;

fn main() {
    let space = corpus::space("cp2_s1");
    let deg1 = solve_degree(&space, 1);
    println!("degree-2 basis of H_G(CP^2):");
    for (i, class) in deg1.classes.iter().enumerate() {
        let parts: Vec<String> = render_class(&space, class)
            .into_iter()
            .map(|(p, f)| format!("{}: {}", p, f))
            .collect();
        println!("  b{} = [{}]", i, parts.join(", "));
    }
    for (i, a) in deg1.classes.iter().enumerate() {
        for (j, b) in deg1.classes.iter().enumerate().skip(i) {
            let (product, coords) = multiply_classes(&space, a, b).expect("subalgebra closure");
            let rendered: Vec<String> = render_class(&space, &product)
                .into_iter()
                .map(|(p, f)| format!("{}: {}", p, f))
                .collect();
            let coord_text: Vec<String> = coords.iter().map(format_rational).collect();
            println!(
                "b{} * b{} = [{}]  =  ({}) in the degree-4 basis",
                i,
                j,
                rendered.join(", "),
                coord_text.join(", ")
            );
        }
    }
}
