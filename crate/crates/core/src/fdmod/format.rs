//! Module files:
//!
//! ```text
//! algebra = qplane.galg
//! over = B!
//! fingerprint = 0123456789abcdef
//! dim 0 = 1
//! dim 1 = 2
//! act x1 0 = [[1], [0]]
//! ```
//!
//! `algebra` names a presentation file relative to the module file; `over`
//! is `B!` or `C!`; the fingerprint line is optional. Degrees without a `dim`
//! line are zero and missing `act` lines are zero maps. Every `act` matrix
//! must have exactly `dim (d+1)` rows of `dim d` entries.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::str::FromStr;

use super::{GradedModule, ModuleError};
use crate::linalg::Matrix;
use crate::shriek::{GradedAlgebra, ShriekAlgebra};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Over {
    /// `B_n^!`
    Full,
    /// `C_n^!`
    Sub,
}

impl Over {
    pub fn algebra<'a>(&self, a: &'a ShriekAlgebra) -> &'a std::sync::Arc<GradedAlgebra> {
        match self {
            Over::Full => a.full(),
            Over::Sub => a.sub(),
        }
    }
}

impl fmt::Display for Over {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Over::Full => "B!",
            Over::Sub => "C!",
        })
    }
}

impl FromStr for Over {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "B!" => Ok(Over::Full),
            "C!" => Ok(Over::Sub),
            _ => Err(format!("expected `B!` or `C!`, found `{s}`")),
        }
    }
}

#[derive(Debug, Clone)]
struct ActLine {
    line: usize,
    generator: String,
    degree: i32,
    rows: Vec<Vec<String>>,
}

/// A parsed module file whose entries are not yet interpreted in a field.
#[derive(Debug, Clone)]
pub struct ModuleFile {
    pub algebra: String,
    pub over: Over,
    pub fingerprint: Option<String>,
    dims: BTreeMap<i32, usize>,
    acts: Vec<ActLine>,
}

fn parse_err(line: usize, message: impl Into<String>) -> ModuleError {
    ModuleError::Parse { line, message: message.into() }
}

fn parse_rows(text: &str, line: usize) -> Result<Vec<Vec<String>>, ModuleError> {
    let t = text.trim();
    let inner = t
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| parse_err(line, format!("expected a matrix `[[...], ...]`, found `{t}`")))?
        .trim();
    let mut rows = Vec::new();
    let mut rest = inner;
    while !rest.is_empty() {
        let body = rest.strip_prefix('[').ok_or_else(|| parse_err(line, format!("expected `[` at `{rest}`")))?;
        let end = body.find(']').ok_or_else(|| parse_err(line, "unclosed row"))?;
        let entries = body[..end].trim();
        rows.push(if entries.is_empty() {
            Vec::new()
        } else {
            entries.split(',').map(|e| e.trim().to_string()).collect()
        });
        rest = body[end + 1..].trim_start();
        if let Some(r) = rest.strip_prefix(',') {
            rest = r.trim_start();
            if rest.is_empty() {
                return Err(parse_err(line, "trailing comma"));
            }
        } else if !rest.is_empty() {
            return Err(parse_err(line, format!("expected `,` at `{rest}`")));
        }
    }
    Ok(rows)
}

impl ModuleFile {
    pub fn parse(text: &str) -> Result<ModuleFile, ModuleError> {
        let mut algebra = None;
        let mut over = None;
        let mut fingerprint = None;
        let mut dims = BTreeMap::new();
        let mut acts: Vec<ActLine> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (lhs, rhs) = content
                .split_once('=')
                .ok_or_else(|| parse_err(line, format!("expected `key = value`, found `{content}`")))?;
            let (lhs, rhs) = (lhs.trim(), rhs.trim());
            let words: Vec<&str> = lhs.split_whitespace().collect();
            let degree = |s: &str| s.parse::<i32>().map_err(|_| parse_err(line, format!("bad degree `{s}`")));
            let once = |slot: &mut Option<String>, key: &str| -> Result<(), ModuleError> {
                if slot.replace(rhs.to_string()).is_some() {
                    return Err(parse_err(line, format!("duplicate `{key}`")));
                }
                Ok(())
            };
            match words.as_slice() {
                ["algebra"] => once(&mut algebra, "algebra")?,
                ["fingerprint"] => once(&mut fingerprint, "fingerprint")?,
                ["over"] => {
                    let o: Over = rhs.parse().map_err(|m: String| parse_err(line, m))?;
                    if over.replace(o).is_some() {
                        return Err(parse_err(line, "duplicate `over`"));
                    }
                }
                ["dim", d] => {
                    let d = degree(d)?;
                    let m = rhs.parse::<usize>().map_err(|_| parse_err(line, format!("bad dimension `{rhs}`")))?;
                    if dims.insert(d, m).is_some() {
                        return Err(parse_err(line, format!("duplicate `dim {d}`")));
                    }
                }
                ["act", g, d] => {
                    let d = degree(d)?;
                    if acts.iter().any(|a| a.generator == *g && a.degree == d) {
                        return Err(parse_err(line, format!("duplicate `act {g} {d}`")));
                    }
                    acts.push(ActLine { line, generator: g.to_string(), degree: d, rows: parse_rows(rhs, line)? });
                }
                _ => return Err(parse_err(line, format!("unknown key `{lhs}`"))),
            }
        }
        Ok(ModuleFile {
            algebra: algebra.ok_or_else(|| parse_err(0, "missing `algebra` line"))?,
            over: over.ok_or_else(|| parse_err(0, "missing `over` line"))?,
            fingerprint,
            dims,
            acts,
        })
    }

    /// Interprets the file over `a`, validating the fingerprint and every
    /// matrix shape.
    pub fn to_module(&self, a: &ShriekAlgebra) -> Result<GradedModule, ModuleError> {
        let alg = self.over.algebra(a);
        if let Some(fp) = &self.fingerprint {
            if fp != alg.fingerprint() {
                return Err(ModuleError::Fingerprint { expected: alg.fingerprint().to_string(), found: fp.clone() });
            }
        }
        let field = a.field();
        let dim = |d: i32| self.dims.get(&d).copied().unwrap_or(0);
        let (lo, hi) = match (self.dims.keys().next(), self.dims.keys().next_back()) {
            (Some(&lo), Some(&hi)) => (lo, hi + 1),
            _ => (0, 0),
        };
        let mut actions: Vec<Vec<Matrix>> =
            (0..alg.num_gens()).map(|_| (lo..hi).map(|d| Matrix::zeros(field, dim(d + 1), dim(d))).collect()).collect();
        for act in &self.acts {
            let g = alg
                .gen_names()
                .iter()
                .position(|n| *n == act.generator)
                .ok_or_else(|| ModuleError::UnknownGenerator { line: act.line, name: act.generator.clone() })?;
            let d = act.degree;
            let expected = (dim(d + 1), dim(d));
            let found = (act.rows.len(), act.rows.first().map_or(expected.1, Vec::len));
            if found != expected || act.rows.iter().any(|r| r.len() != expected.1) {
                return Err(ModuleError::Shape { generator: act.generator.clone(), degree: d, expected, found });
            }
            if expected.0 * expected.1 == 0 {
                continue;
            }
            let rows = act
                .rows
                .iter()
                .map(|r| r.iter().map(|e| field.parse(e)).collect::<Result<Vec<_>, _>>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| parse_err(act.line, e.to_string()))?;
            actions[g][(d - lo) as usize] = Matrix::from_rows(field, expected.1, rows);
        }
        GradedModule::new(alg.clone(), lo, (lo..hi).map(dim).collect(), actions)
    }
}

/// Renders `m` in the module file format. Zero maps are omitted.
pub fn write_module(m: &GradedModule, algebra_path: &str, over: Over) -> String {
    let alg = m.algebra();
    let mut s = String::new();
    let _ = writeln!(s, "algebra = {algebra_path}");
    let _ = writeln!(s, "over = {over}");
    let _ = writeln!(s, "fingerprint = {}", alg.fingerprint());
    for (d, n) in m.dimension_vector() {
        let _ = writeln!(s, "dim {d} = {n}");
    }
    for (g, name) in alg.gen_names().iter().enumerate() {
        for d in m.degrees() {
            let a = m.action(g, d);
            if !a.is_zero() {
                let _ = writeln!(s, "act {name} {d} = {}", crate::linalg::format_matrix(&a));
            }
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::field::Field;
    use crate::presentation::GPresentation;

    fn qplane() -> ShriekAlgebra {
        let p = GPresentation::parse("gens = X, Y\nb 2 1 = 2\n", Field::Rational).unwrap();
        ShriekAlgebra::build(&Arc::new(p.homogenize().unwrap())).unwrap()
    }

    #[test]
    fn round_trip_regular() {
        let a = qplane();
        let reg = GradedModule::regular(a.full().clone());
        let text = write_module(&reg, "qplane.galg", Over::Full);
        let back = ModuleFile::parse(&text).unwrap().to_module(&a).unwrap();
        assert_eq!(back, reg);
    }

    #[test]
    fn simple_module_file() {
        let a = qplane();
        let m = ModuleFile::parse("algebra = q.galg\nover = C!\ndim 0 = 1\n").unwrap().to_module(&a).unwrap();
        assert_eq!(m, GradedModule::simple(a.sub().clone(), 0));
    }

    #[test]
    fn rejects_bad_shapes_and_names() {
        let a = qplane();
        let bad = "algebra = q.galg\nover = B!\ndim 0 = 1\ndim 1 = 2\nact x1 0 = [[1, 0], [0, 1]]\n";
        assert!(matches!(
            ModuleFile::parse(bad).unwrap().to_module(&a),
            Err(ModuleError::Shape { expected: (2, 1), found: (2, 2), .. })
        ));
        let unknown = "algebra = q.galg\nover = C!\ndim 0 = 1\ndim 1 = 1\nact z 0 = [[1]]\n";
        assert!(matches!(
            ModuleFile::parse(unknown).unwrap().to_module(&a),
            Err(ModuleError::UnknownGenerator { line: 5, .. })
        ));
        let fp = "algebra = q.galg\nover = B!\nfingerprint = 00\ndim 0 = 1\n";
        assert!(matches!(ModuleFile::parse(fp).unwrap().to_module(&a), Err(ModuleError::Fingerprint { .. })));
        assert!(matches!(ModuleFile::parse("over = B!\n"), Err(ModuleError::Parse { .. })));
        assert!(matches!(ModuleFile::parse("algebra = a\nover = D!\n"), Err(ModuleError::Parse { line: 2, .. })));
    }
}
