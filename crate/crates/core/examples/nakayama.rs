//! Nakayama automorphisms of several Koszul duals, with the scalar `k`
//! satisfying `sigma(z) = k z`.

use std::sync::Arc;

use galg::shriek::ShriekAlgebra;
use galg::{Field, GPresentation};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let examples = [
        ("k[x]", "gens = x\n"),
        ("k[x, y]", "gens = x, y\nb 2 1 = 1\n"),
        ("quantum plane, b = 2", "gens = X, Y\nb 2 1 = 2\n"),
        ("weyl", "gens = X, D\nb 2 1 = 1\nd 2 1 = 1\n"),
        ("sl2", "gens = e, f, h\nb 2 1 = 1\nb 3 1 = 1\nb 3 2 = 1\nc 2 1 3 = 1\nc 3 1 1 = -2\nc 3 2 2 = 2\n"),
    ];
    for (name, text) in examples {
        let p = Arc::new(GPresentation::parse(text, Field::Rational)?.homogenize()?);
        let a = ShriekAlgebra::build(&p)?;
        let sigma = a.nakayama()?;
        let k = sigma.k().map_or_else(|| "none".to_string(), ToString::to_string);
        println!("{name}: identity = {}, k = {k}", sigma.is_identity());
        print!("{}", sigma.report());
    }
    Ok(())
}
