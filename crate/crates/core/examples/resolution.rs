//! Minimal graded resolutions and Ext dimensions of the trivial module over
//! the Koszul duals of `k[x, y]` and its quantum deformation.

use std::sync::Arc;

use galg::fdmod::{ext_dims, is_koszul, resolve, syzygy, GradedModule};
use galg::shriek::ShriekAlgebra;
use galg::{Field, GPresentation};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p = Arc::new(GPresentation::parse("gens = X, Y\nb 2 1 = 2\n", Field::Rational)?.homogenize()?);
    let a = ShriekAlgebra::build(&p)?;

    for (name, alg) in [("B!", a.full()), ("C!", a.sub())] {
        let k = GradedModule::simple(alg.clone(), 0);
        let omega = syzygy(&k).module;
        println!("{name}: first syzygy of k has dims {:?}", omega.dimension_vector());

        let res = resolve(&k, 4);
        println!("  ranks {:?}, minimal = {}", res.ranks(), res.is_minimal());
        for row in ext_dims(&k, 4) {
            println!("  Ext^{} : dim {} in degrees {:?}", row.step, row.dim, row.degrees);
        }
        println!("  linear resolution: {}", is_koszul(&k, 4)?);
    }
    Ok(())
}
