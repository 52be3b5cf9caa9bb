//! Induction from the subalgebra, restriction, the F-local test, Nakayama
//! twists and the endpoint of the Auslander-Reiten translate.

use std::sync::Arc;

use galg::fdmod::{
    ar_translate_endpoint, find_isomorphism, induce, is_f_local, restrict, twist_by_nakayama, GradedModule,
};
use galg::shriek::ShriekAlgebra;
use galg::{Field, GPresentation};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p = Arc::new(GPresentation::parse("gens = X, Y\nb 2 1 = 2\n", Field::Rational)?.homogenize()?);
    let a = ShriekAlgebra::build(&p)?;
    let sigma = a.nakayama()?;

    let k_sub = GradedModule::simple(a.sub().clone(), 0);
    let induced = induce(&a, &k_sub)?;
    println!("induced k: dims {:?}", induced.dimension_vector());
    println!("restricted back: dims {:?}", restrict(&a, &induced)?.dimension_vector());

    let regular = GradedModule::regular(a.full().clone());
    let k = GradedModule::simple(a.full().clone(), 0);
    for (name, m) in [("regular", &regular), ("k", &k), ("induced k", &induced)] {
        println!("{name}: F-local = {}", is_f_local(&a, m)?);
    }

    let twisted = twist_by_nakayama(&regular, &sigma)?;
    println!("twisted regular isomorphic to regular: {}", find_isomorphism(&twisted, &regular)?.is_some());

    let tau = ar_translate_endpoint(&k, &sigma)?;
    println!("AR endpoint of k: dims {:?}", tau.dimension_vector());
    Ok(())
}
