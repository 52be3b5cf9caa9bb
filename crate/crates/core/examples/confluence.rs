//! Overlap checking on a consistent and an inconsistent presentation of sl2.

use std::sync::Arc;

use galg::{certify_confluence, Field, GPresentation, Letter};

const SL2: &str = "gens = e, f, h\nb 2 1 = 1\nb 3 1 = 1\nb 3 2 = 1\nc 2 1 3 = 1\nc 3 1 1 = -2\nc 3 2 2 = 2\n";
// the structure constant for [h, e] is off, so the Jacobi identity fails
const SL2_BAD: &str = "gens = e, f, h\nb 2 1 = 1\nb 3 1 = 1\nb 3 2 = 1\nc 2 1 3 = 1\nc 3 1 1 = 3\nc 3 2 2 = 2\n";

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (name, text) in [("sl2", SL2), ("sl2 (bad)", SL2_BAD)] {
        let p = Arc::new(GPresentation::parse(text, Field::Rational)?.homogenize()?);
        let report = certify_confluence(&p)?;
        println!("{name}: {} overlap(s), certified = {}", report.overlaps_checked, report.certified);
        for f in &report.failures {
            let word: Vec<&str> = f
                .word
                .iter()
                .map(|l| match l {
                    Letter::X(i) => p.gen_names()[*i].as_str(),
                    Letter::Z => "Z",
                })
                .collect();
            println!("  {}: {} != {}", word.join("*"), f.left, f.right);
        }
    }
    Ok(())
}
