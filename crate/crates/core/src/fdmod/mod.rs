//! Finite-dimensional graded modules over `B_n^!` and `C_n^!`.
//!
//! Both algebras are connected graded and local, so projective modules are
//! free and minimal resolutions are computed by repeated projective covers.
//! `dim Ext^i(M, k)` is the number of generators of the `i`-th term.

mod format;
mod induce;
mod iso;
mod module;
mod resolution;

use std::sync::Arc;

use thiserror::Error;

pub use format::{write_module, ModuleFile, Over};
pub use induce::{ar_translate_endpoint, induce, is_f_local, restrict, twist_by_nakayama};
pub use iso::{find_isomorphism, is_module_map};
pub use module::{GradedModule, RelationViolation, Submodule};
pub use resolution::{
    ext_dims, is_koszul, projective_cover, random_module, resolve, syzygy, ExtRow, FreeModule, ProjectiveCover,
    ResolutionData, ResolutionStep, Syzygy,
};

use crate::field::FieldError;
use crate::shriek::{GradedAlgebra, ShriekError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModuleError {
    #[error("action of {generator} on degree {degree}: expected {expected:?}, found {found:?}")]
    Shape { generator: String, degree: i32, expected: (usize, usize), found: (usize, usize) },
    #[error("expected actions for {expected} generators, found {found}")]
    GeneratorCount { expected: usize, found: usize },
    #[error("module is over a different algebra")]
    AlgebraMismatch,
    #[error("module is not generated in a single degree (generator degrees {0:?})")]
    NotGeneratedInOneDegree(Vec<i32>),
    #[error("module is projective")]
    Projective,
    #[error("B! is not free over C! on 1 and z")]
    NotFree,
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: unknown generator `{name}`")]
    UnknownGenerator { line: usize, name: String },
    #[error("fingerprint mismatch: file says {found}, algebra is {expected}")]
    Fingerprint { expected: String, found: String },
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Shriek(#[from] ShriekError),
}

pub(crate) fn check_same_algebra(a: &Arc<GradedAlgebra>, b: &Arc<GradedAlgebra>) -> Result<(), ModuleError> {
    if Arc::ptr_eq(a, b) || (a.fingerprint() == b.fingerprint() && a.gen_names() == b.gen_names()) {
        Ok(())
    } else {
        Err(ModuleError::AlgebraMismatch)
    }
}
