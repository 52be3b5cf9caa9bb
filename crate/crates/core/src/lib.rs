//! Symbolic workbench for homogeneous G-algebras.
//!
//! * [`presentation`]: G-algebra presentations `A_n`, their homogenizations
//!   `B_n` and the quantum polynomial rings `C_n`.
//! * [`rewrite`]: PBW normal forms, products, confluence certification and
//!   (de)homogenization of elements.
//! * [`shriek`]: the finite-dimensional Koszul dual `B_n^!`, its subalgebra
//!   `C_n^!`, the socle pairing and the Nakayama automorphism.
//! * [`fdmod`]: graded modules over `B_n^!` and `C_n^!`: syzygies, minimal
//!   resolutions, Ext dimensions, induction, restriction and Nakayama twists.
//! * [`cli`]: the command-line front end.

pub mod cli;
pub mod fdmod;
pub mod field;
pub mod linalg;
pub mod presentation;
pub mod rewrite;
pub mod shriek;

pub use field::{Field, FieldError, Rational, Scalar};
pub use presentation::{Flavor, GPresentation, PresentationError};
pub use rewrite::{certify_confluence, graded_dim, ConfluenceReport, Letter, Monomial, NCElement, RewriteError};
