use std::sync::Arc;

use super::{reduce, rewrite_at, Letter, NCElement, RewriteError};
use crate::presentation::{Flavor, GPresentation};

/// An overlap `X_k X_j X_i` whose two reduction routes disagree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OverlapFailure {
    pub word: Vec<Letter>,
    /// reduce `X_k X_j` first
    pub left: NCElement,
    /// reduce `X_j X_i` first
    pub right: NCElement,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfluenceReport {
    pub certified: bool,
    pub overlaps_checked: usize,
    pub failures: Vec<OverlapFailure>,
}

/// Diamond-lemma check: every overlap ambiguity `X_k X_j X_i` (`k > j > i`)
/// must resolve, and in the homogenized flavor so must the overlaps with the
/// centrality relations `X_j X_i Z`.
pub fn certify_confluence(p: &Arc<GPresentation>) -> Result<ConfluenceReport, RewriteError> {
    let n = p.n();
    let mut failures = Vec::new();
    let mut checked = 0;
    for k in 0..n {
        for j in 0..k {
            for i in 0..j {
                checked += 1;
                let xs = [k as u16, j as u16, i as u16];
                let route = |pos: usize| -> Result<NCElement, RewriteError> {
                    let terms = reduce(p, rewrite_at(p, &xs, 0, pos))?;
                    Ok(NCElement::from_terms(p, terms))
                };
                let (left, right) = (route(0)?, route(1)?);
                if left != right {
                    failures.push(OverlapFailure { word: vec![Letter::X(k), Letter::X(j), Letter::X(i)], left, right });
                }
            }
        }
    }
    if p.flavor() == Flavor::Homogenized {
        let z = NCElement::letter(p, Letter::Z)?;
        for j in 0..n {
            for i in 0..j {
                checked += 1;
                let xj = NCElement::letter(p, Letter::X(j))?;
                let xi = NCElement::letter(p, Letter::X(i))?;
                let left = xj.mul(&xi)?.mul(&z)?;
                let right = xj.mul(&z.mul(&xi)?)?;
                if left != right {
                    failures.push(OverlapFailure { word: vec![Letter::X(j), Letter::X(i), Letter::Z], left, right });
                }
            }
        }
    }
    Ok(ConfluenceReport { certified: failures.is_empty(), overlaps_checked: checked, failures })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    fn pres(text: &str) -> Arc<GPresentation> {
        Arc::new(GPresentation::parse(text, Field::Rational).unwrap())
    }

    const SL2: &str = "gens = e, f, h\nb 2 1 = 1\nb 3 1 = 1\nb 3 2 = 1\n";

    #[test]
    fn sl2_certifies_and_corruption_fails() {
        let good = pres(&format!("{SL2}c 2 1 3 = 1\nc 3 1 1 = -2\nc 3 2 2 = 2\n"));
        let report = certify_confluence(&good).unwrap();
        assert!(report.certified);
        assert_eq!(report.overlaps_checked, 1);

        let bad = pres(&format!("{SL2}c 2 1 3 = 1\nc 3 1 1 = 3\nc 3 2 2 = 2\n"));
        let report = certify_confluence(&bad).unwrap();
        assert!(!report.certified);
        assert_eq!(report.failures.len(), 1);
        let f = &report.failures[0];
        assert_eq!(f.word, vec![Letter::X(2), Letter::X(1), Letter::X(0)]);
        assert_ne!(f.left, f.right);
    }

    #[test]
    fn homogenized_checks_z_overlaps() {
        let w = Arc::new(pres("gens = X, D\nb 2 1 = 1\nd 2 1 = 1\n").homogenize().unwrap());
        let report = certify_confluence(&w).unwrap();
        assert!(report.certified);
        assert_eq!(report.overlaps_checked, 1);
    }
}
