//! The Koszul dual of a homogenized algebra: graded dimensions, the split
//! into the subalgebra and its z-multiple, and the socle.

use std::sync::Arc;

use galg::shriek::ShriekAlgebra;
use galg::{Field, GPresentation};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let examples = [
        ("polynomial ring in 2 variables", "gens = x, y\nb 2 1 = 1\n"),
        ("quantum plane, b = 2", "gens = X, Y\nb 2 1 = 2\n"),
        ("sl2", "gens = e, f, h\nb 2 1 = 1\nb 3 1 = 1\nb 3 2 = 1\nc 2 1 3 = 1\nc 3 1 1 = -2\nc 3 2 2 = 2\n"),
    ];
    for (name, text) in examples {
        let p = Arc::new(GPresentation::parse(text, Field::Rational)?.homogenize()?);
        let a = ShriekAlgebra::build(&p)?;
        let (r, perp) = a.relation_dims();
        println!("{name}");
        println!("  dim R = {r}, dim R_perp = {perp}");
        println!("  dims = {:?}", a.dims());
        println!("  (sub, z-part) per degree = {:?}", a.split_dims());
        println!("  socle = {}", a.socle_label());
    }
    Ok(())
}
