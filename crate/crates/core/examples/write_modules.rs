//! Writes the sample module files over the quantum plane's Koszul dual into
//! `data/` (or the directory given as the first argument).

use std::path::PathBuf;
use std::sync::Arc;

use galg::fdmod::{induce, write_module, GradedModule, Over};
use galg::shriek::ShriekAlgebra;
use galg::{Field, GPresentation};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir =
        std::env::args().nth(1).map_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data"), PathBuf::from);
    let text = std::fs::read_to_string(dir.join("qplane.galg"))?;
    let pres = GPresentation::parse(&text, Field::Rational)?.homogenize()?;
    let a = ShriekAlgebra::build(&Arc::new(pres))?;

    let files = [
        ("simple_k.mod", GradedModule::simple(a.full().clone(), 0), Over::Full),
        ("regular.mod", GradedModule::regular(a.full().clone()), Over::Full),
        ("simple_k_c.mod", GradedModule::simple(a.sub().clone(), 0), Over::Sub),
        ("regular_c.mod", GradedModule::regular(a.sub().clone()), Over::Sub),
        ("induced_k.mod", induce(&a, &GradedModule::simple(a.sub().clone(), 0))?, Over::Full),
    ];
    for (name, m, over) in files {
        let path = dir.join(name);
        std::fs::write(&path, write_module(&m, "qplane.galg", over))?;
        println!("{}: dims {:?}", path.display(), m.dimension_vector());
    }
    Ok(())
}
