#![allow(dead_code)]

use std::path::PathBuf;
use std::sync::Arc;

use galg::shriek::ShriekAlgebra;
use galg::{Field, Flavor, GPresentation};

pub fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

pub fn load(name: &str) -> Arc<GPresentation> {
    let text = std::fs::read_to_string(data(name)).unwrap();
    Arc::new(GPresentation::parse(&text, Field::Rational).unwrap())
}

/// Homogenized form of a data file.
pub fn load_h(name: &str) -> Arc<GPresentation> {
    let p = load(name);
    match p.flavor() {
        Flavor::Plain => Arc::new(p.homogenize().unwrap()),
        _ => p,
    }
}

pub fn shriek(name: &str) -> ShriekAlgebra {
    ShriekAlgebra::build(&load_h(name)).unwrap()
}

pub fn binomial(n: i64, k: i64) -> u64 {
    if k < 0 || k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

/// Plain presentations used across the suites, with their generator count.
pub const ALGEBRAS: &[(&str, usize)] = &[
    ("comm1.galg", 1),
    ("comm2.galg", 2),
    ("qplane.galg", 2),
    ("weyl.galg", 2),
    ("comm3.galg", 3),
    ("qspace.galg", 3),
    ("sl2.galg", 3),
];
