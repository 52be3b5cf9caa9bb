//! G-algebra presentations.
//!
//! A presentation fixes generators `X_1 < ... < X_n` (file order is PBW order)
//! and, for every `i > j`, the relation
//!
//! ```text
//! X_i X_j - b_ij X_j X_i + sum_k c_ij^k X_k + d_ij = 0
//! ```
//!
//! In the homogenized flavor the linear terms carry one `Z` and the constant
//! carries `Z^2`, with `Z` central. The quantum polynomial flavor keeps only
//! the `b_ij`.
//!
//! File format (line oriented, `#` starts a comment, indices are 1-based):
//!
//! ```text
//! gens = X, D
//! flavor = plain          # optional: plain | homogenized | quantum_poly
//! b 2 1 = 1
//! d 2 1 = 1
//! c 3 1 1 = -2
//! ```

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::field::{Field, Scalar};

pub const DEFAULT_DEGREE_CAP: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Flavor {
    /// `A_n`
    Plain,
    /// `B_n`
    Homogenized,
    /// `C_n = B_n / Z B_n`
    QuantumPoly,
}

impl Flavor {
    pub fn as_str(self) -> &'static str {
        match self {
            Flavor::Plain => "plain",
            Flavor::Homogenized => "homogenized",
            Flavor::QuantumPoly => "quantum_poly",
        }
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("b {i} {j} is zero")]
    ZeroB { i: usize, j: usize },
    #[error("b {i} {j} is missing")]
    MissingB { i: usize, j: usize },
    #[error("line {line}: index out of range: {message}")]
    IndexOutOfRange { line: usize, message: String },
    #[error("duplicate generator name `{0}`")]
    DuplicateGenerator(String),
    #[error("expected a {expected} presentation, got {found}")]
    Flavor { expected: &'static str, found: Flavor },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GPresentation {
    field: Field,
    gen_names: Vec<String>,
    /// `b[i][j]` for `i > j`, zero-based; the upper triangle is unused.
    b: Vec<Vec<Scalar>>,
    /// nonzero `c_ij^k`, zero-based
    c: BTreeMap<(usize, usize, usize), Scalar>,
    /// nonzero `d_ij`, zero-based
    d: BTreeMap<(usize, usize), Scalar>,
    flavor: Flavor,
    degree_cap: usize,
}

impl GPresentation {
    /// Builds a presentation from zero-based coefficient tables. `b` must
    /// contain every pair `i > j`.
    pub fn new(
        field: Field,
        gen_names: Vec<String>,
        b: BTreeMap<(usize, usize), Scalar>,
        c: BTreeMap<(usize, usize, usize), Scalar>,
        d: BTreeMap<(usize, usize), Scalar>,
        flavor: Flavor,
    ) -> Result<Self, PresentationError> {
        let n = gen_names.len();
        for (idx, name) in gen_names.iter().enumerate() {
            if gen_names[..idx].contains(name) {
                return Err(PresentationError::DuplicateGenerator(name.clone()));
            }
        }
        let mut table = vec![vec![field.one(); n]; n];
        for (i, row) in table.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate().take(i) {
                match b.get(&(i, j)) {
                    None => return Err(PresentationError::MissingB { i: i + 1, j: j + 1 }),
                    Some(x) if x.is_zero() => return Err(PresentationError::ZeroB { i: i + 1, j: j + 1 }),
                    Some(x) => *entry = x.clone(),
                }
            }
        }
        let range = |what: &str| PresentationError::IndexOutOfRange { line: 0, message: what.to_string() };
        if b.keys().any(|&(i, j)| i >= n || j >= i) {
            return Err(range("b index"));
        }
        if c.keys().any(|&(i, j, k)| i >= n || j >= i || k >= n) {
            return Err(range("c index"));
        }
        if d.keys().any(|&(i, j)| i >= n || j >= i) {
            return Err(range("d index"));
        }
        let c: BTreeMap<_, _> = c.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        let d: BTreeMap<_, _> = d.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        if flavor == Flavor::QuantumPoly && !(c.is_empty() && d.is_empty()) {
            return Err(PresentationError::Syntax {
                line: 0,
                column: 0,
                message: "quantum_poly presentations cannot have c or d terms".into(),
            });
        }
        Ok(GPresentation { field, gen_names, b: table, c, d, flavor, degree_cap: DEFAULT_DEGREE_CAP })
    }

    pub fn with_degree_cap(mut self, cap: usize) -> Self {
        self.degree_cap = cap;
        self
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn n(&self) -> usize {
        self.gen_names.len()
    }

    pub fn gen_names(&self) -> &[String] {
        &self.gen_names
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn degree_cap(&self) -> usize {
        self.degree_cap
    }

    /// Number of generators of the graded algebra, counting `Z` when present.
    pub fn num_variables(&self) -> usize {
        self.n() + usize::from(self.flavor == Flavor::Homogenized)
    }

    /// `b_ij` for zero-based `i > j`.
    pub fn b(&self, i: usize, j: usize) -> &Scalar {
        debug_assert!(i > j);
        &self.b[i][j]
    }

    pub fn c(&self, i: usize, j: usize, k: usize) -> Scalar {
        self.c.get(&(i, j, k)).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn d(&self, i: usize, j: usize) -> Scalar {
        self.d.get(&(i, j)).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// Nonzero `c_ij^k` for the given pair, as `(k, c)`.
    pub fn linear_terms(&self, i: usize, j: usize) -> impl Iterator<Item = (usize, &Scalar)> {
        self.c.range((i, j, 0)..(i, j + 1, 0)).map(|(&(_, _, k), v)| (k, v))
    }

    pub fn gen_index(&self, name: &str) -> Option<usize> {
        self.gen_names.iter().position(|g| g == name)
    }

    fn with_flavor(&self, flavor: Flavor) -> GPresentation {
        GPresentation { flavor, ..self.clone() }
    }

    /// `A_n -> B_n`: same constants, linear terms pick up `Z`, constants `Z^2`.
    pub fn homogenize(&self) -> Result<GPresentation, PresentationError> {
        self.expect(Flavor::Plain)?;
        Ok(self.with_flavor(Flavor::Homogenized))
    }

    /// `B_n -> A_n = B_n / (Z - 1)`.
    pub fn dehomogenize(&self) -> Result<GPresentation, PresentationError> {
        self.expect(Flavor::Homogenized)?;
        Ok(self.with_flavor(Flavor::Plain))
    }

    /// `B_n -> C_n = B_n / Z B_n`: keeps `n` and `b`, drops every `c` and `d`.
    pub fn quantum_poly(&self) -> Result<GPresentation, PresentationError> {
        self.expect(Flavor::Homogenized)?;
        Ok(GPresentation { c: BTreeMap::new(), d: BTreeMap::new(), ..self.with_flavor(Flavor::QuantumPoly) })
    }

    fn expect(&self, flavor: Flavor) -> Result<(), PresentationError> {
        if self.flavor != flavor {
            return Err(PresentationError::Flavor { expected: flavor.as_str(), found: self.flavor });
        }
        Ok(())
    }

    pub fn parse(text: &str, field: Field) -> Result<GPresentation, PresentationError> {
        parse_presentation(text, field)
    }
}

impl fmt::Display for GPresentation {
    /// Canonical file form; parses back to an equal presentation.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "gens = {}", self.gen_names.join(", "))?;
        writeln!(f, "flavor = {}", self.flavor)?;
        for i in 0..self.n() {
            for j in 0..i {
                writeln!(f, "b {} {} = {}", i + 1, j + 1, self.b[i][j])?;
            }
        }
        for (&(i, j, k), v) in &self.c {
            writeln!(f, "c {} {} {} = {}", i + 1, j + 1, k + 1, v)?;
        }
        for (&(i, j), v) in &self.d {
            writeln!(f, "d {} {} = {}", i + 1, j + 1, v)?;
        }
        Ok(())
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

pub fn parse_presentation(text: &str, field: Field) -> Result<GPresentation, PresentationError> {
    let mut gens: Option<Vec<String>> = None;
    let mut flavor = Flavor::Plain;
    let mut b = BTreeMap::new();
    let mut c = BTreeMap::new();
    let mut d = BTreeMap::new();

    for (lineno, raw) in text.lines().enumerate() {
        let line_no = lineno + 1;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let syntax = |column: usize, message: String| PresentationError::Syntax { line: line_no, column, message };
        let col_of = |token: &str| token.as_ptr() as usize - raw.as_ptr() as usize + 1;

        let Some((lhs, rhs)) = content.split_once('=') else {
            let tok = content.trim();
            return Err(syntax(col_of(tok), format!("expected `=` in `{tok}`")));
        };
        let words: Vec<&str> = lhs.split_whitespace().collect();
        let rhs_tok = rhs.trim();

        if gens.is_none() {
            if words != ["gens"] {
                let tok = words.first().copied().unwrap_or(lhs);
                return Err(syntax(col_of(tok), "first line must be `gens = ...`".into()));
            }
            let mut names = Vec::new();
            let mut offset = 0;
            for part in rhs.split(',') {
                let name = part.trim();
                let column = col_of(rhs) + offset + part.find(name).unwrap_or(0);
                offset += part.len() + 1;
                if !is_identifier(name) {
                    return Err(syntax(column, format!("invalid generator name `{name}`")));
                }
                if name == "Z" {
                    return Err(syntax(column, "`Z` is reserved for the homogenizing variable".into()));
                }
                if names.iter().any(|g| g == name) {
                    return Err(PresentationError::DuplicateGenerator(name.to_string()));
                }
                names.push(name.to_string());
            }
            gens = Some(names);
            continue;
        }
        let n = gens.as_ref().map_or(0, Vec::len);

        let Some((&kind, idx_words)) = words.split_first() else {
            return Err(syntax(col_of(content.trim_start()), "missing keyword".into()));
        };
        if kind == "flavor" && idx_words.is_empty() {
            flavor = match rhs_tok {
                "plain" => Flavor::Plain,
                "homogenized" => Flavor::Homogenized,
                "quantum_poly" => Flavor::QuantumPoly,
                other => return Err(syntax(col_of(rhs_tok), format!("unknown flavor `{other}`"))),
            };
            continue;
        }
        let arity = match kind {
            "b" | "d" => 2,
            "c" => 3,
            "gens" => return Err(syntax(col_of(kind), "duplicate `gens` line".into())),
            other => return Err(syntax(col_of(kind), format!("unknown keyword `{other}`"))),
        };
        if idx_words.len() != arity {
            return Err(syntax(col_of(kind), format!("`{kind}` takes {arity} indices, found {}", idx_words.len())));
        }
        let mut idx = Vec::with_capacity(arity);
        for w in idx_words {
            let v: usize = w.parse().map_err(|_| syntax(col_of(w), format!("invalid index `{w}`")))?;
            if v == 0 || v > n {
                return Err(PresentationError::IndexOutOfRange {
                    line: line_no,
                    message: format!("`{w}` not in 1..={n}"),
                });
            }
            idx.push(v - 1);
        }
        if idx[0] <= idx[1] {
            return Err(PresentationError::IndexOutOfRange {
                line: line_no,
                message: format!("relation indices need i > j, got {} {}", idx[0] + 1, idx[1] + 1),
            });
        }
        let value = field.parse(rhs_tok).map_err(|e| syntax(col_of(rhs_tok), e.to_string()))?;
        let duplicate = match kind {
            "b" => b.insert((idx[0], idx[1]), value).is_some(),
            "c" => c.insert((idx[0], idx[1], idx[2]), value).is_some(),
            _ => d.insert((idx[0], idx[1]), value).is_some(),
        };
        if duplicate {
            return Err(syntax(col_of(kind), format!("duplicate `{}` entry", lhs.trim())));
        }
    }

    let gens =
        gens.ok_or(PresentationError::Syntax { line: 1, column: 1, message: "missing `gens = ...` line".into() })?;
    if gens.is_empty() {
        return Err(PresentationError::Syntax { line: 1, column: 1, message: "no generators".into() });
    }
    GPresentation::new(field, gens, b, c, d, flavor)
}
