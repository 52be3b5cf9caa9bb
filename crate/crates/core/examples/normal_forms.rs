//! PBW normal forms in the Weyl algebra and its homogenization, plus the
//! round trip through dehomogenization.

use std::sync::Arc;

use galg::{Field, GPresentation, NCElement};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let weyl = Arc::new(GPresentation::parse("gens = X, D\nb 2 1 = 1\nd 2 1 = 1\n", Field::Rational)?);
    let weyl_h = Arc::new(weyl.homogenize()?);

    for text in ["D*X", "D^2*X", "D*X^2", "D^3*X^3"] {
        let plain = NCElement::parse(&weyl, text)?;
        let homog = NCElement::parse(&weyl_h, text)?;
        println!("{text:>8}  =  {plain}");
        println!("{:>8}  =  {homog}", "(homog)");
        assert_eq!(homog.dehomogenize()?, plain);
    }

    // products compose: (D X)(D X) computed two ways
    let dx = NCElement::parse(&weyl_h, "D*X")?;
    let square = dx.mul(&dx)?;
    assert_eq!(square, NCElement::parse(&weyl_h, "D*X*D*X")?);
    println!("(D*X)^2 = {square}");
    Ok(())
}
