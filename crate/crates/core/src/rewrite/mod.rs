//! PBW normal forms in `A_n`, `B_n` and `C_n`.
//!
//! Words are rewritten by replacing the leftmost adjacent inversion
//! `X_i X_j` (`i > j`) with
//!
//! ```text
//! b_ij X_j X_i - sum_k c_ij^k [Z] X_k - d_ij [Z^2]
//! ```
//!
//! where the bracketed powers of `Z` appear only in the homogenized flavor.
//! `Z` is central and is carried as an exponent, never as a letter.

mod confluence;
mod element;
mod monomial;

use std::cmp::Ordering;
use std::collections::BTreeMap;

use thiserror::Error;

use crate::field::Scalar;
use crate::presentation::{Flavor, GPresentation, PresentationError};

pub use confluence::{certify_confluence, ConfluenceReport, OverlapFailure};
pub use element::{normal_form, NCElement};
pub use monomial::{Letter, Monomial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RewriteError {
    #[error("degree {degree} exceeds the degree cap {cap}")]
    DegreeCap { degree: usize, cap: usize },
    #[error("`Z` is only available in the homogenized flavor (presentation is {0})")]
    ZNotAvailable(Flavor),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("generator index {0} out of range")]
    GeneratorOutOfRange(usize),
    #[error("at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("elements belong to different presentations")]
    PresentationMismatch,
    #[error(transparent)]
    Flavor(#[from] PresentationError),
    #[error("target degree {target} is below the element degree {degree}")]
    TargetDegree { target: u32, degree: u32 },
}

/// A word awaiting reduction: `X` letters plus a power of `Z`.
///
/// Ordered so that every rewrite step produces strictly smaller keys: shorter
/// `X` words first, then lexicographic, then by `Z` power.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Pending {
    xs: Vec<u16>,
    z: u32,
}

impl Ord for Pending {
    fn cmp(&self, other: &Self) -> Ordering {
        self.xs.len().cmp(&other.xs.len()).then_with(|| self.xs.cmp(&other.xs)).then_with(|| self.z.cmp(&other.z))
    }
}

impl PartialOrd for Pending {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn accumulate<K: Ord>(map: &mut BTreeMap<K, Scalar>, key: K, coeff: Scalar) {
    if coeff.is_zero() {
        return;
    }
    match map.entry(key) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(coeff);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            let sum = e.get() + &coeff;
            if sum.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = sum;
            }
        }
    }
}

/// One rewrite of the inversion at `pos, pos + 1`.
fn rewrite_at(p: &GPresentation, xs: &[u16], z: u32, pos: usize) -> Vec<(Vec<u16>, u32, Scalar)> {
    let (i, j) = (xs[pos] as usize, xs[pos + 1] as usize);
    debug_assert!(i > j);
    let homogenized = p.flavor() == Flavor::Homogenized;
    let mut out = Vec::new();

    let mut swapped = xs.to_vec();
    swapped.swap(pos, pos + 1);
    out.push((swapped, z, p.b(i, j).clone()));

    for (k, c) in p.linear_terms(i, j) {
        let mut w = Vec::with_capacity(xs.len() - 1);
        w.extend_from_slice(&xs[..pos]);
        w.push(k as u16);
        w.extend_from_slice(&xs[pos + 2..]);
        out.push((w, z + u32::from(homogenized), -c));
    }
    let d = p.d(i, j);
    if !d.is_zero() {
        let mut w = Vec::with_capacity(xs.len() - 2);
        w.extend_from_slice(&xs[..pos]);
        w.extend_from_slice(&xs[pos + 2..]);
        out.push((w, z + 2 * u32::from(homogenized), -d));
    }
    out
}

fn leftmost_inversion(xs: &[u16]) -> Option<usize> {
    xs.windows(2).position(|w| w[0] > w[1])
}

/// Reduces a linear combination of words to PBW normal form.
///
/// Each popped word is the largest remaining one, and its rewrites are all
/// smaller, so every word is rewritten exactly once with its final
/// coefficient.
fn reduce(p: &GPresentation, words: Vec<(Vec<u16>, u32, Scalar)>) -> Result<BTreeMap<Monomial, Scalar>, RewriteError> {
    let cap = p.degree_cap();
    let mut pending = BTreeMap::new();
    for (xs, z, coeff) in words {
        let degree = xs.len() + z as usize;
        if degree > cap {
            return Err(RewriteError::DegreeCap { degree, cap });
        }
        accumulate(&mut pending, Pending { xs, z }, coeff);
    }
    let mut result = BTreeMap::new();
    while let Some((word, coeff)) = pending.pop_last() {
        match leftmost_inversion(&word.xs) {
            None => accumulate(&mut result, Monomial::from_sorted(p.n(), word.z, &word.xs), coeff),
            Some(pos) => {
                for (xs, z, c) in rewrite_at(p, &word.xs, word.z, pos) {
                    accumulate(&mut pending, Pending { xs, z }, &coeff * &c);
                }
            }
        }
    }
    Ok(result)
}

/// Number of PBW monomials of total degree `d`.
pub fn graded_dim(p: &GPresentation, d: usize) -> u64 {
    binomial((p.num_variables() + d).saturating_sub(1) as u64, d as u64)
}

pub(crate) fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}
